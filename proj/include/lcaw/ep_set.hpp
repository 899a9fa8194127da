#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lcaw {

/** An eventually periodic subset of the naturals.
 *
 * Membership below `threshold()` is given by an explicit prefix; from the
 * threshold on it depends only on the residue class modulo `modulus()`.
 * Every value is kept in canonical form (minimal modulus, then minimal
 * threshold), so equality of representations is equality of sets.
 *
 * Finite sets, cofinite sets and residue classes are all special cases,
 * which is what lets one element type serve every algebra family.
 */
class EpSet {
public:
  EpSet() : res_(1, false) {}

  static EpSet empty() { return EpSet{}; }

  static EpSet naturals() {
    EpSet s;
    s.res_[0] = true;
    return s;
  }

  static EpSet singleton(unsigned n) { return finite({n}); }

  static EpSet finite(std::initializer_list<unsigned> ns) {
    return finite(std::vector<unsigned>(ns));
  }

  static EpSet finite(const std::vector<unsigned>& ns) {
    EpSet s;
    unsigned t = 0;
    for (unsigned n : ns) t = std::max(t, n + 1);
    s.prefix_.assign(t, false);
    for (unsigned n : ns) s.prefix_[n] = true;
    s.canonicalize();
    return s;
  }

  /** Complement of a finite set, i.e. a cofinite set. */
  static EpSet cofinite_except(const std::vector<unsigned>& ns) {
    EpSet s = naturals();
    return s.diff(finite(ns));
  }

  static EpSet residue_class(unsigned r, unsigned m) {
    if (m == 0) throw std::invalid_argument("residue class: modulus must be positive");
    EpSet s;
    s.res_.assign(m, false);
    s.res_[r % m] = true;
    s.canonicalize();
    return s;
  }

  /** Arbitrary eventually periodic set from raw data. */
  static EpSet from_parts(const std::vector<unsigned>& prefix_members, unsigned threshold,
                          const std::vector<unsigned>& residues, unsigned modulus) {
    if (modulus == 0) throw std::invalid_argument("ep set: modulus must be positive");
    EpSet s;
    s.prefix_.assign(threshold, false);
    for (unsigned n : prefix_members) {
      if (n < threshold) s.prefix_[n] = true;
    }
    s.res_.assign(modulus, false);
    for (unsigned r : residues) s.res_[r % modulus] = true;
    s.canonicalize();
    return s;
  }

  unsigned threshold() const { return static_cast<unsigned>(prefix_.size()); }
  unsigned modulus() const { return static_cast<unsigned>(res_.size()); }

  bool contains(unsigned n) const {
    if (n < prefix_.size()) return prefix_[n];
    return res_[n % res_.size()];
  }

  bool is_empty() const {
    return std::none_of(prefix_.begin(), prefix_.end(), [](bool b) { return b; }) &&
           std::none_of(res_.begin(), res_.end(), [](bool b) { return b; });
  }

  bool is_finite() const {
    return std::none_of(res_.begin(), res_.end(), [](bool b) { return b; });
  }

  bool is_cofinite() const {
    return std::all_of(res_.begin(), res_.end(), [](bool b) { return b; });
  }

  std::optional<unsigned> min_element() const {
    for (unsigned n = 0; n < prefix_.size(); ++n)
      if (prefix_[n]) return n;
    // first member of the periodic tail, if any
    for (unsigned n = threshold(); n < threshold() + modulus(); ++n)
      if (res_[n % modulus()]) return n;
    return std::nullopt;
  }

  std::vector<unsigned> members_below(unsigned bound) const {
    std::vector<unsigned> out;
    for (unsigned n = 0; n < bound; ++n)
      if (contains(n)) out.push_back(n);
    return out;
  }

  /** Members of a finite set; throws on infinite sets. */
  std::vector<unsigned> finite_members() const {
    if (!is_finite()) throw std::logic_error("finite_members on an infinite set");
    return members_below(threshold());
  }

  EpSet unite(const EpSet& o) const {
    return combine(o, [](bool x, bool y) { return x || y; });
  }

  EpSet meet(const EpSet& o) const {
    return combine(o, [](bool x, bool y) { return x && y; });
  }

  EpSet diff(const EpSet& o) const {
    return combine(o, [](bool x, bool y) { return x && !y; });
  }

  bool subset_of(const EpSet& o) const { return diff(o).is_empty(); }

  bool intersects(const EpSet& o) const { return !meet(o).is_empty(); }

  bool operator==(const EpSet& o) const = default;

  /** Total order on canonical forms; any deterministic order will do. */
  bool operator<(const EpSet& o) const {
    if (res_.size() != o.res_.size()) return res_.size() < o.res_.size();
    if (res_ != o.res_) return res_ < o.res_;
    if (prefix_.size() != o.prefix_.size()) return prefix_.size() < o.prefix_.size();
    return prefix_ < o.prefix_;
  }

  std::string to_string() const {
    std::string out = "{";
    bool first = true;
    for (unsigned n : members_below(threshold())) {
      if (!first) out += ",";
      out += std::to_string(n);
      first = false;
    }
    out += "}";
    if (!is_finite()) {
      out += "+[";
      first = true;
      for (unsigned r = 0; r < modulus(); ++r)
        if (res_[r]) {
          if (!first) out += ",";
          out += std::to_string(r);
          first = false;
        }
      out += " mod " + std::to_string(modulus()) + " from " + std::to_string(threshold()) + "]";
    }
    return out;
  }

  const std::vector<bool>& prefix_bits() const { return prefix_; }
  const std::vector<bool>& residue_bits() const { return res_; }

private:
  template <class F>
  EpSet combine(const EpSet& o, F f) const {
    std::uint64_t big = std::lcm<std::uint64_t>(modulus(), o.modulus());
    if (big > 1u << 20) throw std::overflow_error("ep set: combined modulus too large");
    unsigned m = static_cast<unsigned>(big);
    unsigned t = std::max(threshold(), o.threshold());
    EpSet out;
    out.prefix_.assign(t, false);
    for (unsigned n = 0; n < t; ++n) out.prefix_[n] = f(contains(n), o.contains(n));
    out.res_.assign(m, false);
    for (unsigned r = 0; r < m; ++r)
      out.res_[r] = f(res_[r % modulus()], o.res_[r % o.modulus()]);
    out.canonicalize();
    return out;
  }

  void canonicalize() {
    // minimal period
    unsigned m = modulus();
    for (unsigned d = 1; d < m; ++d) {
      if (m % d != 0) continue;
      bool periodic = true;
      for (unsigned i = 0; i < m && periodic; ++i) periodic = (res_[i] == res_[i % d]);
      if (periodic) {
        res_.resize(d);
        m = d;
        break;
      }
    }
    // minimal threshold
    while (!prefix_.empty() && prefix_.back() == res_[(prefix_.size() - 1) % res_.size()])
      prefix_.pop_back();
  }

  std::vector<bool> prefix_;  // membership below the threshold
  std::vector<bool> res_;     // membership per residue class from the threshold on
};

}  // namespace lcaw
