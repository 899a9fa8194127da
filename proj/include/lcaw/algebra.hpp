#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ep_set.hpp"

namespace lcaw {

/** Raised when a request is outside the decidable fragment. */
struct unsupported_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/** Raised on malformed or out-of-contract inputs. */
struct input_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class AlgebraKind { powerset, finite_cofinite, ult_periodic };

/** A decidable Boolean algebra of subsets of the naturals.
 *
 * Three families: finite powersets (the top element is a finite set of atom
 * positions, usually carrying labels), the finite/cofinite algebra over the
 * naturals, and the algebra of eventually periodic sets.  Meet, join and
 * order are inherited from EpSet; complement is relative to the top element.
 */
class Algebra {
public:
  static Algebra powerset(const std::vector<std::string>& atom_labels) {
    Algebra a;
    a.kind_ = AlgebraKind::powerset;
    std::vector<unsigned> positions;
    for (unsigned i = 0; i < atom_labels.size(); ++i) positions.push_back(i);
    a.top_ = EpSet::finite(positions);
    a.atom_labels_ = atom_labels;
    a.atom_positions_ = positions;
    return a;
  }

  /** Powerset over an arbitrary finite carrier set; used for relative algebras. */
  static Algebra powerset_over(const EpSet& carrier, std::vector<std::string> labels = {}) {
    if (!carrier.is_finite()) throw input_error("powerset carrier must be finite");
    Algebra a;
    a.kind_ = AlgebraKind::powerset;
    a.top_ = carrier;
    a.atom_positions_ = carrier.finite_members();
    if (labels.empty())
      for (unsigned p : a.atom_positions_) labels.push_back(std::to_string(p));
    if (labels.size() != a.atom_positions_.size())
      throw input_error("powerset: one label per atom expected");
    a.atom_labels_ = std::move(labels);
    return a;
  }

  static Algebra finite_cofinite() {
    Algebra a;
    a.kind_ = AlgebraKind::finite_cofinite;
    a.top_ = EpSet::naturals();
    return a;
  }

  static Algebra ult_periodic(unsigned modulus) {
    if (modulus == 0) throw input_error("ult_periodic: modulus must be positive");
    Algebra a;
    a.kind_ = AlgebraKind::ult_periodic;
    a.top_ = EpSet::naturals();
    a.modulus_ = modulus;
    return a;
  }

  AlgebraKind kind() const { return kind_; }
  bool is_finite() const { return kind_ == AlgebraKind::powerset; }
  unsigned declared_modulus() const { return modulus_; }

  const EpSet& one() const { return top_; }
  EpSet zero() const { return EpSet::empty(); }

  EpSet meet(const EpSet& a, const EpSet& b) const { return a.meet(b); }
  EpSet join(const EpSet& a, const EpSet& b) const { return a.unite(b); }
  EpSet complement(const EpSet& a) const { return top_.diff(a); }
  bool leq(const EpSet& a, const EpSet& b) const { return a.subset_of(b); }

  /** Is the set an element of this algebra? */
  bool contains(const EpSet& a) const {
    switch (kind_) {
      case AlgebraKind::powerset: return a.subset_of(top_);
      case AlgebraKind::finite_cofinite: return a.is_finite() || a.is_cofinite();
      case AlgebraKind::ult_periodic: return true;
    }
    return false;
  }

  // --- finite enumeration ---

  unsigned atom_count() const {
    require_finite();
    return static_cast<unsigned>(atom_positions_.size());
  }

  const std::vector<unsigned>& atom_positions() const {
    require_finite();
    return atom_positions_;
  }

  EpSet atom(unsigned i) const {
    require_finite();
    return EpSet::singleton(atom_positions_.at(i));
  }

  std::uint64_t size() const {
    require_finite();
    return std::uint64_t{1} << atom_positions_.size();
  }

  EpSet element(std::uint64_t mask) const {
    require_finite();
    std::vector<unsigned> members;
    for (unsigned i = 0; i < atom_positions_.size(); ++i)
      if (mask & (std::uint64_t{1} << i)) members.push_back(atom_positions_[i]);
    return EpSet::finite(members);
  }

  std::uint64_t mask_of(const EpSet& a) const {
    require_finite();
    std::uint64_t m = 0;
    for (unsigned i = 0; i < atom_positions_.size(); ++i)
      if (a.contains(atom_positions_[i])) m |= std::uint64_t{1} << i;
    return m;
  }

  std::string label_of(const EpSet& a) const {
    if (kind_ != AlgebraKind::powerset || atom_labels_.empty()) return a.to_string();
    std::string out = "{";
    bool first = true;
    for (unsigned i = 0; i < atom_positions_.size(); ++i)
      if (a.contains(atom_positions_[i])) {
        if (!first) out += ",";
        out += atom_labels_[i];
        first = false;
      }
    return out + "}";
  }

  const std::vector<std::string>& atom_labels() const { return atom_labels_; }

  std::optional<unsigned> atom_index_by_label(const std::string& name) const {
    for (unsigned i = 0; i < atom_labels_.size(); ++i)
      if (atom_labels_[i] == name) return i;
    return std::nullopt;
  }

  bool operator==(const Algebra& o) const {
    return kind_ == o.kind_ && top_ == o.top_ && modulus_ == o.modulus_;
  }

private:
  void require_finite() const {
    if (kind_ != AlgebraKind::powerset)
      throw unsupported_error("operation requires a finite algebra");
  }

  AlgebraKind kind_ = AlgebraKind::powerset;
  EpSet top_;
  std::vector<std::string> atom_labels_;
  std::vector<unsigned> atom_positions_;
  unsigned modulus_ = 1;
};

/** An ideal of an algebra, with decidable membership. */
class Ideal {
public:
  enum class Kind { all, finite_elements, principal };

  static Ideal all() { return Ideal{Kind::all, EpSet::empty()}; }
  static Ideal finite_elements() { return Ideal{Kind::finite_elements, EpSet::empty()}; }
  static Ideal principal(const EpSet& top) { return Ideal{Kind::principal, top}; }

  /** Ideal generated by finitely many elements: downward closure of their join. */
  static Ideal generated(const Algebra& alg, const std::vector<EpSet>& gens) {
    EpSet j = alg.zero();
    for (const auto& g : gens) j = alg.join(j, g);
    return principal(j);
  }

  Kind kind() const { return kind_; }
  const EpSet& top() const { return top_; }

  bool contains(const Algebra& alg, const EpSet& a) const {
    switch (kind_) {
      case Kind::all: return true;
      case Kind::finite_elements: return a.is_finite();
      case Kind::principal: return alg.leq(a, top_);
    }
    return false;
  }

  /** Semantic equality over a finite algebra. */
  static bool equal_on(const Algebra& alg, const Ideal& i, const Ideal& j) {
    for (std::uint64_t m = 0; m < alg.size(); ++m) {
      EpSet e = alg.element(m);
      if (i.contains(alg, e) != j.contains(alg, e)) return false;
    }
    return true;
  }

private:
  Ideal(Kind k, EpSet t) : kind_(k), top_(std::move(t)) {}
  Kind kind_;
  EpSet top_;
};

/** An ultrafilter, given by a finite descriptor.
 *
 * Principal ultrafilters are the upsets of atoms.  The finite/cofinite
 * algebra has exactly one free ultrafilter (the cofinite sets).  For the
 * eventually periodic algebra, free ultrafilters refining a residue class
 * are named by the class; membership is only reported where the descriptor
 * determines it.
 */
class Ultrafilter {
public:
  enum class Kind { principal, free_cofinite, free_residue };

  static Ultrafilter principal(unsigned atom_position) {
    return Ultrafilter{Kind::principal, EpSet::singleton(atom_position)};
  }
  static Ultrafilter free_cofinite() { return Ultrafilter{Kind::free_cofinite, EpSet::empty()}; }
  static Ultrafilter free_residue(const EpSet& residue_class) {
    return Ultrafilter{Kind::free_residue, residue_class};
  }

  Kind kind() const { return kind_; }
  const EpSet& descriptor() const { return desc_; }

  /** The atom generating a principal ultrafilter. */
  EpSet atom() const {
    if (kind_ != Kind::principal) throw unsupported_error("not a principal ultrafilter");
    return desc_;
  }

  std::optional<bool> contains(const EpSet& a) const {
    switch (kind_) {
      case Kind::principal: return desc_.subset_of(a);
      case Kind::free_cofinite:
        if (a.is_cofinite()) return true;
        if (a.is_finite()) return false;
        return std::nullopt;
      case Kind::free_residue: {
        if (desc_.diff(a).is_finite()) return true;   // a contains the class eventually
        if (desc_.meet(a).is_finite()) return false;  // a misses the class eventually
        return std::nullopt;
      }
    }
    return std::nullopt;
  }

private:
  Ultrafilter(Kind k, EpSet d) : kind_(k), desc_(std::move(d)) {}
  Kind kind_;
  EpSet desc_;
};

/** All ultrafilters of a finite algebra; a documented inventory for the
 * symbolic families (principal ones up to `principal_bound`, plus the free
 * descriptors). */
inline std::vector<Ultrafilter> ultrafilters(const Algebra& alg, unsigned principal_bound = 8) {
  std::vector<Ultrafilter> out;
  switch (alg.kind()) {
    case AlgebraKind::powerset:
      for (unsigned p : alg.atom_positions()) out.push_back(Ultrafilter::principal(p));
      break;
    case AlgebraKind::finite_cofinite:
      for (unsigned n = 0; n < principal_bound; ++n) out.push_back(Ultrafilter::principal(n));
      out.push_back(Ultrafilter::free_cofinite());
      break;
    case AlgebraKind::ult_periodic:
      for (unsigned n = 0; n < principal_bound; ++n) out.push_back(Ultrafilter::principal(n));
      for (unsigned r = 0; r < alg.declared_modulus(); ++r)
        out.push_back(Ultrafilter::free_residue(EpSet::residue_class(r, alg.declared_modulus())));
      break;
  }
  return out;
}

/** A complete Boolean homomorphism.
 *
 * Finite sources are stored by atom images and extended by joins; the
 * symbolic algebras admit only the identity and the natural epimorphism
 * a -> a /\ a0, where everything is closed form.
 */
class Hom {
public:
  enum class Kind { identity, meet_with, atom_images };

  static Hom identity(const Algebra& a) { return Hom{Kind::identity, a, a, EpSet::empty(), {}}; }

  /** Natural epimorphism onto the relative algebra below a0. */
  static Hom natural_epi(const Algebra& src, const Algebra& dst, const EpSet& a0) {
    return Hom{Kind::meet_with, src, dst, a0, {}};
  }

  static Hom from_atom_images(const Algebra& src, const Algebra& dst,
                              std::vector<EpSet> images) {
    if (images.size() != src.atom_count())
      throw input_error("hom: one image per source atom expected");
    return Hom{Kind::atom_images, src, dst, EpSet::empty(), std::move(images)};
  }

  Kind rep_kind() const { return kind_; }
  const Algebra& source() const { return src_; }
  const Algebra& target() const { return dst_; }

  EpSet apply(const EpSet& a) const {
    switch (kind_) {
      case Kind::identity: return a;
      case Kind::meet_with: return a.meet(a0_);
      case Kind::atom_images: {
        EpSet out = EpSet::empty();
        for (unsigned i = 0; i < images_.size(); ++i)
          if (src_.leq(src_.atom(i), a)) out = out.unite(images_[i]);
        return out;
      }
    }
    return a;
  }

  /** Hom laws plus complete-join preservation (atom images partition the top). */
  bool is_complete_hom(std::string* why = nullptr) const {
    if (kind_ != Kind::atom_images) return true;  // closed forms are homs by construction
    EpSet u = EpSet::empty();
    for (unsigned i = 0; i < images_.size(); ++i) {
      for (unsigned j = i + 1; j < images_.size(); ++j)
        if (images_[i].intersects(images_[j])) {
          if (why) *why = "atom images of " + src_.label_of(src_.atom(i)) + " and " +
                          src_.label_of(src_.atom(j)) + " overlap";
          return false;
        }
      u = u.unite(images_[i]);
    }
    if (!(u == dst_.one())) {
      if (why) *why = "atom images do not cover the target top";
      return false;
    }
    return true;
  }

  bool is_injective() const {
    if (kind_ == Kind::identity) return true;
    if (kind_ == Kind::meet_with) return a0_ == src_.one();
    for (const auto& im : images_)
      if (im.is_empty()) return false;
    return true;
  }

  bool is_surjective() const {
    if (kind_ == Kind::identity || kind_ == Kind::meet_with) return true;
    // the image subalgebra is generated by the atom images, so a complete
    // hom from a finite algebra is onto iff every target atom is itself
    // the image of a source atom
    for (unsigned j = 0; j < dst_.atom_count(); ++j) {
      bool covered = false;
      for (const auto& im : images_)
        if (im == dst_.atom(j)) covered = true;
      if (!covered) return false;
    }
    return true;
  }

  const EpSet& meet_element() const { return a0_; }
  const std::vector<EpSet>& atom_images() const { return images_; }

  /** Composition this∘inner (apply inner first). */
  static Hom compose(const Hom& outer, const Hom& inner) {
    if (inner.rep_kind() == Kind::identity) return outer;
    if (outer.rep_kind() == Kind::identity) return inner;
    if (inner.source().is_finite()) {
      std::vector<EpSet> images;
      for (unsigned i = 0; i < inner.source().atom_count(); ++i)
        images.push_back(outer.apply(inner.apply(inner.source().atom(i))));
      return from_atom_images(inner.source(), outer.target(), std::move(images));
    }
    throw unsupported_error("hom composition with a symbolic source");
  }

private:
  Hom(Kind k, Algebra s, Algebra d, EpSet a0, std::vector<EpSet> images)
      : kind_(k), src_(std::move(s)), dst_(std::move(d)), a0_(std::move(a0)),
        images_(std::move(images)) {}

  Kind kind_;
  Algebra src_, dst_;
  EpSet a0_;
  std::vector<EpSet> images_;
};

/** The upper adjoint of a complete hom: the largest b-preimage,
 * phi_adj(b) = meet of all a with b <= phi(a). */
class UpperAdjoint {
public:
  explicit UpperAdjoint(Hom phi) : phi_(std::move(phi)) {}

  EpSet apply(const EpSet& b) const {
    switch (phi_.rep_kind()) {
      case Hom::Kind::identity: return b;
      case Hom::Kind::meet_with: return b;  // inclusion of the relative algebra
      case Hom::Kind::atom_images: {
        EpSet out = EpSet::empty();
        for (unsigned i = 0; i < phi_.source().atom_count(); ++i)
          if (phi_.apply(phi_.source().atom(i)).intersects(b))
            out = out.unite(phi_.source().atom(i));
        return out;
      }
    }
    return b;
  }

  const Hom& hom() const { return phi_; }

private:
  Hom phi_;
};

inline UpperAdjoint adjoint(const Hom& phi) { return UpperAdjoint{phi}; }

/** The relative algebra below a0, together with the natural epimorphism
 * a -> a /\ a0.  Complement below a0 is b* /\ a0. */
inline std::pair<Algebra, Hom> relative_algebra(const Algebra& alg, const EpSet& a0) {
  if (a0.is_empty()) throw input_error("relative algebra below 0 is degenerate");
  if (a0 == alg.one()) return {alg, Hom::identity(alg)};
  if (alg.is_finite()) {
    std::vector<std::string> labels;
    for (unsigned i = 0; i < alg.atom_count(); ++i)
      if (alg.leq(alg.atom(i), a0)) labels.push_back(alg.atom_labels()[i]);
    Algebra sub = Algebra::powerset_over(a0, labels);
    return {sub, Hom::natural_epi(alg, sub, a0)};
  }
  if (a0.is_finite()) {
    Algebra sub = Algebra::powerset_over(a0);
    return {sub, Hom::natural_epi(alg, sub, a0)};
  }
  throw unsupported_error("relative algebra below an infinite element of a symbolic algebra");
}

}  // namespace lcaw
