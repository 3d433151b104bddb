#ifndef AUTHORID_STEMMER_HPP_
#define AUTHORID_STEMMER_HPP_

#include <string>
#include <string_view>

namespace authorid {

// Porter suffix-stripping stemmer, steps 1a through 5b of the 1980
// algorithm. Input is a non-empty lowercase word; words of one or two
// letters are returned unchanged. Throws std::invalid_argument on an
// empty word.
std::string porter_stem(std::string_view word);

}  // namespace authorid

#endif  // AUTHORID_STEMMER_HPP_
