#pragma once

#include "frechet/rational.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace frechet {

/// Raised when a bound source contradicts bounds already recorded. This is
/// always a bug in some bound source and must never be swallowed.
class unsound_bounds : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// A real number known through a nondecreasing stream of rational lower bounds
/// and a nonincreasing stream of rational upper bounds. Either stream may be
/// empty (unbounded on that side).
class Enclosure {
public:
  struct Entry {
    Rat value;
    std::uint64_t work = 0;
  };

  Enclosure() = default;

  static Enclosure exact(const Rat& v, std::uint64_t work = 0) { return Enclosure(v, v, work); }

  Enclosure(const Rat& lo, const Rat& hi, std::uint64_t work = 0) {
    if (hi < lo) throw unsound_bounds("unsound bounds: lower " + to_string(lo) + " > upper " + to_string(hi));
    lowers_.push_back({lo, work});
    uppers_.push_back({hi, work});
  }

  bool has_lower() const { return !lowers_.empty(); }
  bool has_upper() const { return !uppers_.empty(); }
  const Rat& lower() const {
    if (lowers_.empty()) throw std::logic_error("enclosure has no lower bound");
    return lowers_.back().value;
  }
  const Rat& upper() const {
    if (uppers_.empty()) throw std::logic_error("enclosure has no upper bound");
    return uppers_.back().value;
  }
  const std::vector<Entry>& lower_history() const { return lowers_; }
  const std::vector<Entry>& upper_history() const { return uppers_; }

  std::optional<Rat> width() const {
    if (!has_lower() || !has_upper()) return std::nullopt;
    return Rat(upper() - lower());
  }

  bool contains(const Rat& x) const {
    return (!has_lower() || lower() <= x) && (!has_upper() || x <= upper());
  }

  /// Applies new bounds in place. Weaker bounds are ignored; a bound crossing
  /// the opposite side throws. Returns which sides actually moved.
  struct Moved {
    bool lower = false;
    bool upper = false;
  };
  Moved tighten(const std::optional<Rat>& new_lower, const std::optional<Rat>& new_upper,
                std::uint64_t work = 0) {
    if (new_lower && has_upper() && upper() < *new_lower)
      throw unsound_bounds("unsound bounds: new lower " + to_string(*new_lower) + " exceeds upper " +
                           to_string(upper()));
    if (new_upper && has_lower() && *new_upper < lower())
      throw unsound_bounds("unsound bounds: new upper " + to_string(*new_upper) + " below lower " +
                           to_string(lower()));
    if (new_lower && new_upper && *new_upper < *new_lower)
      throw unsound_bounds("unsound bounds: crossing pair");
    Moved moved;
    if (new_lower && (!has_lower() || lower() < *new_lower)) {
      lowers_.push_back({*new_lower, work});
      moved.lower = true;
    }
    if (new_upper && (!has_upper() || *new_upper < upper())) {
      uppers_.push_back({*new_upper, work});
      moved.upper = true;
    }
    return moved;
  }

  Enclosure tightened(const std::optional<Rat>& new_lower, const std::optional<Rat>& new_upper,
                      std::uint64_t work = 0) const {
    Enclosure e = *this;
    e.tighten(new_lower, new_upper, work);
    return e;
  }

  /// Every recorded lower entry is <= every recorded upper entry.
  bool is_consistent() const {
    if (lowers_.empty() || uppers_.empty()) return true;
    for (std::size_t i = 1; i < lowers_.size(); ++i)
      if (lowers_[i].value < lowers_[i - 1].value) return false;
    for (std::size_t i = 1; i < uppers_.size(); ++i)
      if (uppers_[i - 1].value < uppers_[i].value) return false;
    return lowers_.back().value <= uppers_.back().value;
  }

private:
  std::vector<Entry> lowers_;
  std::vector<Entry> uppers_;
};

/// Free-function form used by callers that treat enclosures as values.
inline Enclosure enclosure_tighten(const Enclosure& e, const std::optional<Rat>& new_lower,
                                   const std::optional<Rat>& new_upper, std::uint64_t work = 0) {
  return e.tightened(new_lower, new_upper, work);
}

}  // namespace frechet
