#include "authorid/stemmer.hpp"

#include <stdexcept>

namespace authorid {

namespace {

// Working state for one word. b[0..k] holds the current word; j marks the
// last letter of the stem left behind once a candidate suffix is removed.
// All the condition helpers (measure, *v*, *d, *o) evaluate b[0..j].
class PorterState {
 public:
  explicit PorterState(std::string_view word) : b_(word) {
    k_ = static_cast<int>(b_.size()) - 1;
    j_ = k_;
  }

  std::string result() { return b_.substr(0, static_cast<std::size_t>(k_) + 1); }

  void run() {
    if (k_ <= 1) return;  // one- and two-letter words pass through
    step1a();
    step1b();
    step1c();
    step2();
    step3();
    step4();
    step5a();
    step5b();
  }

 private:
  bool consonant(int i) const {
    switch (b_[static_cast<std::size_t>(i)]) {
      case 'a': case 'e': case 'i': case 'o': case 'u':
        return false;
      case 'y':
        return i == 0 ? true : !consonant(i - 1);
      default:
        return true;
    }
  }

  // Measure of b[0..j]: the m in [C](VC)^m[V].
  int measure() const {
    int n = 0;
    int i = 0;
    while (true) {
      if (i > j_) return n;
      if (!consonant(i)) break;
      ++i;
    }
    ++i;
    while (true) {
      while (true) {
        if (i > j_) return n;
        if (consonant(i)) break;
        ++i;
      }
      ++i;
      ++n;
      while (true) {
        if (i > j_) return n;
        if (!consonant(i)) break;
        ++i;
      }
      ++i;
    }
  }

  bool vowel_in_stem() const {  // *v*
    for (int i = 0; i <= j_; ++i)
      if (!consonant(i)) return true;
    return false;
  }

  bool double_consonant(int i) const {  // *d at position i
    if (i < 1) return false;
    if (b_[static_cast<std::size_t>(i)] != b_[static_cast<std::size_t>(i - 1)])
      return false;
    return consonant(i);
  }

  // consonant-vowel-consonant ending at i where the final consonant is not
  // w, x or y.  *o
  bool cvc(int i) const {
    if (i < 2 || !consonant(i) || consonant(i - 1) || !consonant(i - 2))
      return false;
    char c = b_[static_cast<std::size_t>(i)];
    return c != 'w' && c != 'x' && c != 'y';
  }

  bool ends(std::string_view s) {
    int len = static_cast<int>(s.size());
    if (len > k_ + 1) return false;
    if (b_.compare(static_cast<std::size_t>(k_ - len + 1),
                   static_cast<std::size_t>(len), s) != 0)
      return false;
    j_ = k_ - len;
    return true;
  }

  void set_to(std::string_view s) {
    b_.replace(static_cast<std::size_t>(j_ + 1), b_.size(), s);
    k_ = j_ + static_cast<int>(s.size());
  }

  void replace_if_measure(std::string_view s) {
    if (measure() > 0) set_to(s);
  }

  // SSES -> SS, IES -> I, SS -> SS, S -> ""
  void step1a() {
    if (b_[static_cast<std::size_t>(k_)] != 's') return;
    if (ends("sses")) {
      k_ -= 2;
    } else if (ends("ies")) {
      set_to("i");
    } else if (b_[static_cast<std::size_t>(k_ - 1)] != 's') {
      --k_;
    }
  }

  // (m>0) EED -> EE; (*v*) ED, ING -> "" with the AT/BL/IZ, *d and
  // (m=1 and *o) tidy-ups afterwards.
  void step1b() {
    if (ends("eed")) {
      if (measure() > 0) --k_;
      return;
    }
    bool stripped = false;
    if (ends("ed")) {
      if (vowel_in_stem()) {
        k_ = j_;
        stripped = true;
      }
    } else if (ends("ing")) {
      if (vowel_in_stem()) {
        k_ = j_;
        stripped = true;
      }
    }
    if (!stripped) return;
    if (ends("at")) {
      set_to("ate");
    } else if (ends("bl")) {
      set_to("ble");
    } else if (ends("iz")) {
      set_to("ize");
    } else if (double_consonant(k_)) {
      char c = b_[static_cast<std::size_t>(k_)];
      if (c != 'l' && c != 's' && c != 'z') --k_;
    } else {
      j_ = k_;
      if (measure() == 1 && cvc(k_)) set_to("e");
    }
  }

  // (*v*) Y -> I
  void step1c() {
    if (ends("y") && vowel_in_stem())
      b_[static_cast<std::size_t>(k_)] = 'i';
  }

  void step2() {
    if (k_ < 1) return;
    switch (b_[static_cast<std::size_t>(k_ - 1)]) {
      case 'a':
        if (ends("ational")) { replace_if_measure("ate"); break; }
        if (ends("tional")) { replace_if_measure("tion"); break; }
        break;
      case 'c':
        if (ends("enci")) { replace_if_measure("ence"); break; }
        if (ends("anci")) { replace_if_measure("ance"); break; }
        break;
      case 'e':
        if (ends("izer")) { replace_if_measure("ize"); break; }
        break;
      case 'l':
        if (ends("abli")) { replace_if_measure("able"); break; }
        if (ends("alli")) { replace_if_measure("al"); break; }
        if (ends("entli")) { replace_if_measure("ent"); break; }
        if (ends("eli")) { replace_if_measure("e"); break; }
        if (ends("ousli")) { replace_if_measure("ous"); break; }
        break;
      case 'o':
        if (ends("ization")) { replace_if_measure("ize"); break; }
        if (ends("ation")) { replace_if_measure("ate"); break; }
        if (ends("ator")) { replace_if_measure("ate"); break; }
        break;
      case 's':
        if (ends("alism")) { replace_if_measure("al"); break; }
        if (ends("iveness")) { replace_if_measure("ive"); break; }
        if (ends("fulness")) { replace_if_measure("ful"); break; }
        if (ends("ousness")) { replace_if_measure("ous"); break; }
        break;
      case 't':
        if (ends("aliti")) { replace_if_measure("al"); break; }
        if (ends("iviti")) { replace_if_measure("ive"); break; }
        if (ends("biliti")) { replace_if_measure("ble"); break; }
        break;
      default:
        break;
    }
  }

  void step3() {
    switch (b_[static_cast<std::size_t>(k_)]) {
      case 'e':
        if (ends("icate")) { replace_if_measure("ic"); break; }
        if (ends("ative")) { replace_if_measure(""); break; }
        if (ends("alize")) { replace_if_measure("al"); break; }
        break;
      case 'i':
        if (ends("iciti")) { replace_if_measure("ic"); break; }
        break;
      case 'l':
        if (ends("ical")) { replace_if_measure("ic"); break; }
        if (ends("ful")) { replace_if_measure(""); break; }
        break;
      case 's':
        if (ends("ness")) { replace_if_measure(""); break; }
        break;
      default:
        break;
    }
  }

  void step4() {
    if (k_ < 1) return;
    switch (b_[static_cast<std::size_t>(k_ - 1)]) {
      case 'a':
        if (ends("al")) break;
        return;
      case 'c':
        if (ends("ance")) break;
        if (ends("ence")) break;
        return;
      case 'e':
        if (ends("er")) break;
        return;
      case 'i':
        if (ends("ic")) break;
        return;
      case 'l':
        if (ends("able")) break;
        if (ends("ible")) break;
        return;
      case 'n':
        if (ends("ant")) break;
        if (ends("ement")) break;
        if (ends("ment")) break;
        if (ends("ent")) break;
        return;
      case 'o':
        if (ends("ion") && j_ >= 0 &&
            (b_[static_cast<std::size_t>(j_)] == 's' ||
             b_[static_cast<std::size_t>(j_)] == 't'))
          break;
        if (ends("ou")) break;
        return;
      case 's':
        if (ends("ism")) break;
        return;
      case 't':
        if (ends("ate")) break;
        if (ends("iti")) break;
        return;
      case 'u':
        if (ends("ous")) break;
        return;
      case 'v':
        if (ends("ive")) break;
        return;
      case 'z':
        if (ends("ize")) break;
        return;
      default:
        return;
    }
    if (measure() > 1) k_ = j_;
  }

  // (m>1) E -> ""; (m=1 and not *o) E -> ""
  void step5a() {
    j_ = k_;
    if (b_[static_cast<std::size_t>(k_)] != 'e') return;
    --j_;
    int m = measure();
    if (m > 1 || (m == 1 && !cvc(k_ - 1))) --k_;
    j_ = k_;
  }

  // (m>1 and *d and *L) -> single letter
  void step5b() {
    j_ = k_;
    if (b_[static_cast<std::size_t>(k_)] == 'l' && double_consonant(k_) &&
        measure() > 1)
      --k_;
  }

  std::string b_;
  int k_;
  int j_;
};

}  // namespace

std::string porter_stem(std::string_view word) {
  if (word.empty())
    throw std::invalid_argument("porter_stem: empty word");
  PorterState state(word);
  state.run();
  return state.result();
}

}  // namespace authorid
