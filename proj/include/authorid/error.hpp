#ifndef AUTHORID_ERROR_HPP_
#define AUTHORID_ERROR_HPP_

#include <stdexcept>

namespace authorid {

// Error categories map one-to-one onto CLI exit codes:
// config_error -> 1, data_error -> 2, train_error -> 3.
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct data_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct train_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace authorid

#endif  // AUTHORID_ERROR_HPP_
