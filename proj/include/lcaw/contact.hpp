#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <set>
#include <utility>

#include "algebra.hpp"
#include "report.hpp"

namespace lcaw {

/** Decidable symmetric relation kernel on algebra elements. */
class ContactKernel {
public:
  virtual ~ContactKernel() = default;
  virtual bool contact(const Algebra& alg, const EpSet& a, const EpSet& b) const = 0;
  virtual std::string kind() const = 0;
};

/** Overlap: a C b iff a /\ b != 0; the smallest contact relation. */
class OverlapKernel final : public ContactKernel {
public:
  bool contact(const Algebra&, const EpSet& a, const EpSet& b) const override {
    return a.intersects(b);
  }
  std::string kind() const override { return "overlap"; }
};

/** Overlap extended by a symmetric relation on atoms of a finite algebra:
 * a C b iff a /\ b != 0 or some atom of a is related to some atom of b. */
class AtomGraphKernel final : public ContactKernel {
public:
  explicit AtomGraphKernel(std::set<std::pair<unsigned, unsigned>> pairs) {
    for (auto [i, j] : pairs) {
      pairs_.insert({i, j});
      pairs_.insert({j, i});
    }
  }
  bool contact(const Algebra& alg, const EpSet& a, const EpSet& b) const override {
    if (a.intersects(b)) return true;
    for (auto [i, j] : pairs_)
      if (a.contains(alg.atom_positions()[i]) && b.contains(alg.atom_positions()[j]))
        return true;
    return false;
  }
  std::string kind() const override { return "atom_graph"; }
  const std::set<std::pair<unsigned, unsigned>>& pairs() const { return pairs_; }

private:
  std::set<std::pair<unsigned, unsigned>> pairs_;
};

/** Hand-entered pair table over a finite algebra.  The table is closed
 * symmetrically, and additivity completion extends the atom-level intents
 * upward; `completion_changed()` records whether that added anything. */
class ExplicitTableKernel final : public ContactKernel {
public:
  ExplicitTableKernel(const Algebra& alg, const std::vector<std::pair<EpSet, EpSet>>& table) {
    for (const auto& [a, b] : table) {
      raw_.insert({alg.mask_of(a), alg.mask_of(b)});
      raw_.insert({alg.mask_of(b), alg.mask_of(a)});
    }
    for (auto [ma, mb] : raw_)
      for (unsigned i = 0; i < alg.atom_count(); ++i)
        for (unsigned j = 0; j < alg.atom_count(); ++j)
          if ((ma >> i) & 1 && (mb >> j) & 1) atom_pairs_.insert({i, j});
    for (std::uint64_t ma = 0; ma < alg.size() && !changed_; ++ma)
      for (std::uint64_t mb = 0; mb < alg.size() && !changed_; ++mb)
        if (atoms_fire(ma, mb) && !raw_.count({ma, mb})) changed_ = true;
  }
  bool contact(const Algebra& alg, const EpSet& a, const EpSet& b) const override {
    auto ma = alg.mask_of(a), mb = alg.mask_of(b);
    return raw_.count({ma, mb}) > 0 || atoms_fire(ma, mb);
  }
  std::string kind() const override { return "explicit"; }
  bool completion_changed() const { return changed_; }

private:
  bool atoms_fire(std::uint64_t ma, std::uint64_t mb) const {
    for (auto [i, j] : atom_pairs_)
      if ((ma >> i) & 1 && (mb >> j) & 1) return true;
    return false;
  }

  std::set<std::pair<std::uint64_t, std::uint64_t>> raw_;
  std::set<std::pair<unsigned, unsigned>> atom_pairs_;
  bool changed_ = false;
};

class ContactRelation;

/** A fully materialized relation over a finite algebra, kept as mask pairs. */
class TableKernel final : public ContactKernel {
public:
  TableKernel(std::string name, std::set<std::pair<std::uint64_t, std::uint64_t>> pairs)
      : name_(std::move(name)), pairs_(std::move(pairs)) {}
  bool contact(const Algebra& alg, const EpSet& a, const EpSet& b) const override {
    return pairs_.count({alg.mask_of(a), alg.mask_of(b)}) > 0;
  }
  std::string kind() const override { return name_; }
  const std::set<std::pair<std::uint64_t, std::uint64_t>>& pairs() const { return pairs_; }

private:
  std::string name_;
  std::set<std::pair<std::uint64_t, std::uint64_t>> pairs_;
};

/** A decidable contact relation bound to its algebra. */
class ContactRelation {
public:
  ContactRelation(Algebra alg, std::shared_ptr<const ContactKernel> kernel)
      : alg_(std::move(alg)), kernel_(std::move(kernel)) {}

  static ContactRelation overlap(const Algebra& alg) {
    return {alg, std::make_shared<OverlapKernel>()};
  }
  static ContactRelation atom_graph(const Algebra& alg,
                                    std::set<std::pair<unsigned, unsigned>> pairs) {
    return {alg, std::make_shared<AtomGraphKernel>(std::move(pairs))};
  }
  static ContactRelation explicit_table(const Algebra& alg,
                                        const std::vector<std::pair<EpSet, EpSet>>& table) {
    return {alg, std::make_shared<ExplicitTableKernel>(alg, table)};
  }
  static ContactRelation from_table(const Algebra& alg, std::string name,
                                    std::set<std::pair<std::uint64_t, std::uint64_t>> pairs) {
    return {alg, std::make_shared<TableKernel>(std::move(name), std::move(pairs))};
  }

  const Algebra& algebra() const { return alg_; }
  const ContactKernel& kernel() const { return *kernel_; }
  std::shared_ptr<const ContactKernel> kernel_ptr() const { return kernel_; }

  bool contact(const EpSet& a, const EpSet& b) const { return kernel_->contact(alg_, a, b); }

  /** a is way inside b: a is apart from the complement of b. */
  bool way_inside(const EpSet& a, const EpSet& b) const {
    return !contact(a, alg_.complement(b));
  }

  /** Materialize over a finite algebra. */
  ContactRelation materialize(const std::string& name) const {
    std::set<std::pair<std::uint64_t, std::uint64_t>> pairs;
    for (std::uint64_t ma = 0; ma < alg_.size(); ++ma)
      for (std::uint64_t mb = 0; mb < alg_.size(); ++mb)
        if (contact(alg_.element(ma), alg_.element(mb))) pairs.insert({ma, mb});
    return from_table(alg_, name, std::move(pairs));
  }

private:
  Algebra alg_;
  std::shared_ptr<const ContactKernel> kernel_;
};

/** A local contact algebra: algebra, contact relation and boundedness ideal. */
struct Lca {
  Algebra algebra;
  ContactRelation rho;
  Ideal bounded;

  bool way_inside(const EpSet& a, const EpSet& b) const { return rho.way_inside(a, b); }
  bool is_bounded(const EpSet& a) const { return bounded.contains(algebra, a); }
};

/** The contact relation of the one-point extension: a C b iff a rho b or
 * both a and b are unbounded. */
class CRhoKernel final : public ContactKernel {
public:
  CRhoKernel(std::shared_ptr<const ContactKernel> rho, Ideal bounded)
      : rho_(std::move(rho)), bounded_(std::move(bounded)) {}
  bool contact(const Algebra& alg, const EpSet& a, const EpSet& b) const override {
    if (rho_->contact(alg, a, b)) return true;
    return !bounded_.contains(alg, a) && !bounded_.contains(alg, b);
  }
  std::string kind() const override { return "c_rho"; }

private:
  std::shared_ptr<const ContactKernel> rho_;
  Ideal bounded_;
};

inline ContactRelation c_rho(const Lca& l) {
  return {l.algebra, std::make_shared<CRhoKernel>(l.rho.kernel_ptr(), l.bounded)};
}

/** Contact of the compactification collapsing each residue class to one
 * end: a C b iff they overlap or share a class with both traces infinite. */
class PartitionEndsKernel final : public ContactKernel {
public:
  explicit PartitionEndsKernel(unsigned modulus) : modulus_(modulus) {
    if (modulus == 0) throw input_error("partition contact: modulus must be positive");
  }
  bool contact(const Algebra&, const EpSet& a, const EpSet& b) const override {
    if (a.intersects(b)) return true;
    for (unsigned r = 0; r < modulus_; ++r) {
      EpSet cls = EpSet::residue_class(r, modulus_);
      if (!a.meet(cls).is_finite() && !b.meet(cls).is_finite()) return true;
    }
    return false;
  }
  std::string kind() const override { return "partition"; }
  unsigned modulus() const { return modulus_; }

private:
  unsigned modulus_;
};

inline ContactRelation partition_ends(const Algebra& alg, unsigned modulus) {
  return {alg, std::make_shared<PartitionEndsKernel>(modulus)};
}

/** Extensional equality over a finite algebra. */
inline bool relations_equal_on(const Algebra& alg, const ContactRelation& c1,
                               const ContactRelation& c2) {
  for (std::uint64_t ma = 0; ma < alg.size(); ++ma)
    for (std::uint64_t mb = 0; mb < alg.size(); ++mb)
      if (c1.contact(alg.element(ma), alg.element(mb)) !=
          c2.contact(alg.element(ma), alg.element(mb)))
        return false;
  return true;
}

// --- axiom checking ---

struct CheckOptions {
  unsigned samples = 120;
  unsigned seed = 20240811;
};

/** Deterministic structured-plus-random element pool for symbolic algebras. */
inline std::vector<EpSet> sample_pool(const Algebra& alg, const CheckOptions& opts) {
  std::vector<EpSet> pool;
  pool.push_back(alg.zero());
  pool.push_back(alg.one());
  pool.push_back(EpSet::singleton(0));
  pool.push_back(EpSet::finite({0, 1}));
  pool.push_back(EpSet::finite({2, 3}));
  pool.push_back(EpSet::cofinite_except({0}));
  if (alg.kind() == AlgebraKind::ult_periodic) {
    unsigned m = alg.declared_modulus();
    for (unsigned mm : {2u, 3u, m})
      for (unsigned r = 0; r < mm; ++r) pool.push_back(EpSet::residue_class(r, mm));
  }
  std::mt19937 rng(opts.seed);
  std::bernoulli_distribution bit(0.35);
  std::uniform_int_distribution<unsigned> pick_mod(1, 6);
  for (unsigned k = 0; k < opts.samples; ++k) {
    if (alg.kind() == AlgebraKind::finite_cofinite) {
      std::vector<unsigned> ms;
      for (unsigned n = 0; n < 12; ++n)
        if (bit(rng)) ms.push_back(n);
      EpSet s = EpSet::finite(ms);
      if (bit(rng)) s = EpSet::naturals().diff(s);
      pool.push_back(s);
    } else {
      unsigned m = pick_mod(rng);
      std::vector<unsigned> pre, res;
      for (unsigned n = 0; n < 6; ++n)
        if (bit(rng)) pre.push_back(n);
      for (unsigned r = 0; r < m; ++r)
        if (bit(rng)) res.push_back(r);
      pool.push_back(EpSet::from_parts(pre, 6, res, m));
    }
  }
  std::vector<EpSet> out;
  for (const auto& e : pool)
    if (alg.contains(e)) out.push_back(e);
  return out;
}

namespace detail {

/** Enumerable element universe: every element of a finite algebra, the
 * sample pool otherwise. */
inline std::vector<EpSet> element_universe(const Algebra& alg, const CheckOptions& opts,
                                           Provenance& prov) {
  if (alg.is_finite()) {
    prov = Provenance::exhaustive;
    std::vector<EpSet> out;
    for (std::uint64_t m = 0; m < alg.size(); ++m) out.push_back(alg.element(m));
    return out;
  }
  prov = Provenance::sampled;
  return sample_pool(alg, opts);
}

inline std::vector<std::string> labels(const Algebra& alg, std::initializer_list<EpSet> es) {
  std::vector<std::string> out;
  for (const auto& e : es) out.push_back(alg.label_of(e));
  return out;
}

}  // namespace detail

/** Contact axioms: (C1) nothing touches 0 and every nonzero element touches
 * itself; (C2) symmetry; (C3) additivity; (C4) overlap implies contact. */
inline ConditionReport check_contact_axioms(const Algebra& alg, const ContactRelation& c,
                                            const CheckOptions& opts = {}) {
  ConditionReport report;
  Provenance prov;
  auto univ = detail::element_universe(alg, opts, prov);
  bool structural = !alg.is_finite() &&
                    (c.kernel().kind() == "overlap" || c.kernel().kind() == "partition");
  Provenance used = structural ? Provenance::structural : prov;

  ConditionResult c1{"C1", true, used, {}, {}};
  for (const auto& a : univ) {
    if (c.contact(a, alg.zero()) || c.contact(alg.zero(), a)) {
      c1 = {"C1", false, used, detail::labels(alg, {a, alg.zero()}), "contact with 0"};
      break;
    }
    if (!a.is_empty() && !c.contact(a, a)) {
      c1 = {"C1", false, used, detail::labels(alg, {a, a}), "nonzero element not in self-contact"};
      break;
    }
  }
  report.add(c1);

  ConditionResult c2{"C2", true, used, {}, {}};
  for (const auto& a : univ) {
    for (const auto& b : univ)
      if (c.contact(a, b) != c.contact(b, a)) {
        c2 = {"C2", false, used, detail::labels(alg, {a, b}), "asymmetric pair"};
        break;
      }
    if (!c2.passed) break;
  }
  report.add(c2);

  ConditionResult c3{"C3", true, used, {}, {}};
  for (const auto& a : univ) {
    for (const auto& b : univ) {
      for (const auto& d : univ) {
        bool lhs = c.contact(a, alg.join(b, d));
        bool rhs = c.contact(a, b) || c.contact(a, d);
        if (lhs != rhs) {
          c3 = {"C3", false, used, detail::labels(alg, {a, b, d}), "additivity broken"};
          break;
        }
      }
      if (!c3.passed) break;
    }
    if (!c3.passed) break;
  }
  report.add(c3);

  ConditionResult c4{"C4", true, used, {}, {}};
  for (const auto& a : univ) {
    for (const auto& b : univ)
      if (a.intersects(b) && !c.contact(a, b)) {
        c4 = {"C4", false, used, detail::labels(alg, {a, b}), "overlapping pair not in contact"};
        break;
      }
    if (!c4.passed) break;
  }
  report.add(c4);

  return report;
}

/** Contact axioms plus normality (interpolation) and extensionality. */
inline ConditionReport check_nca(const Algebra& alg, const ContactRelation& c,
                                 const CheckOptions& opts = {}) {
  ConditionReport report = check_contact_axioms(alg, c, opts);
  Provenance prov;
  auto univ = detail::element_universe(alg, opts, prov);

  ConditionResult ext{"extensionality", true, prov, {}, {}};
  for (const auto& a : univ) {
    if (a == alg.one()) continue;
    bool found = false;
    if (alg.is_finite()) {
      for (const auto& b : univ)
        if (!b.is_empty() && !c.contact(b, a)) found = true;
    } else {
      std::vector<EpSet> cands = univ;
      cands.push_back(alg.complement(a));
      if (auto n = alg.complement(a).min_element())
        cands.push_back(EpSet::singleton(*n));
      for (const auto& b : cands)
        if (alg.contains(b) && !b.is_empty() && !c.contact(b, a)) found = true;
    }
    if (!found) {
      ext = {"extensionality", false, prov, detail::labels(alg, {a}),
             "every nonzero element contacts it"};
      break;
    }
  }
  report.add(ext);

  ConditionResult nrm{"normality", true, prov, {}, {}};
  for (const auto& a : univ) {
    for (const auto& b : univ) {
      if (c.contact(a, b)) continue;
      bool found = false;
      std::vector<EpSet> cands;
      if (alg.is_finite()) {
        cands = univ;
      } else {
        cands = {b, alg.complement(a), alg.complement(b), a};
        for (const auto& e : univ) cands.push_back(e);
        if (c.kernel().kind() == "partition") {
          // constructive interpolant: a together with the tails of its
          // infinite residue classes, started past b's visits to them
          unsigned m = static_cast<const PartitionEndsKernel&>(c.kernel()).modulus();
          EpSet e_star = a;
          for (unsigned r = 0; r < m; ++r) {
            EpSet cls = EpSet::residue_class(r, m);
            if (a.meet(cls).is_finite()) continue;
            unsigned t = 0;
            EpSet visits = b.meet(cls);
            if (!visits.is_empty() && visits.is_finite()) {
              for (unsigned v : visits.finite_members()) t = std::max(t, v + 1);
            }
            e_star = e_star.unite(EpSet::from_parts({}, t, {r}, m));
          }
          if (alg.contains(e_star)) cands.push_back(alg.complement(e_star));
        }
      }
      for (const auto& e : cands)
        if (alg.contains(e) && !c.contact(a, e) && !c.contact(alg.complement(e), b)) {
          found = true;
          break;
        }
      if (!found) {
        nrm = {"normality", false, prov, detail::labels(alg, {a, b}), "no interpolant found"};
        break;
      }
    }
    if (!nrm.passed) break;
  }
  report.add(nrm);

  return report;
}

/** Full local contact algebra check: contact axioms plus (BC1)-(BC3). */
inline ConditionReport check_lca(const Lca& l, const CheckOptions& opts = {}) {
  const Algebra& alg = l.algebra;
  ConditionReport report = check_contact_axioms(alg, l.rho, opts);
  Provenance prov;
  auto univ = detail::element_universe(alg, opts, prov);

  // (BC1): a bounded and a << c admits a bounded interpolant a << b << c.
  ConditionResult bc1{"BC1", true, prov, {}, {}};
  for (const auto& a : univ) {
    if (!l.is_bounded(a)) continue;
    for (const auto& cc : univ) {
      if (!l.way_inside(a, cc)) continue;
      bool found = false;
      std::vector<EpSet> cands;
      if (alg.is_finite()) {
        cands = univ;
      } else {
        cands = {a, cc};
        for (const auto& e : univ) cands.push_back(e);
      }
      for (const auto& b : cands)
        if (alg.contains(b) && l.is_bounded(b) && l.way_inside(a, b) && l.way_inside(b, cc)) {
          found = true;
          break;
        }
      if (!found) {
        bc1 = {"BC1", false, prov, detail::labels(alg, {a, cc}), "no bounded interpolant"};
        break;
      }
    }
    if (!bc1.passed) break;
  }
  report.add(bc1);

  // (BC2): a rho b admits a bounded refinement of b still in contact with a.
  ConditionResult bc2{"BC2", true, prov, {}, {}};
  for (const auto& a : univ) {
    for (const auto& b : univ) {
      if (!l.rho.contact(a, b)) continue;
      bool found = false;
      std::vector<EpSet> cands;
      if (alg.is_finite()) {
        cands = univ;
      } else {
        cands = {b};
        if (auto n = a.meet(b).min_element()) cands.push_back(EpSet::singleton(*n));
        for (const auto& e : univ) cands.push_back(e);
      }
      for (const auto& d : cands)
        if (alg.contains(d) && l.is_bounded(d) && l.rho.contact(a, alg.meet(b, d))) {
          found = true;
          break;
        }
      if (!found) {
        bc2 = {"BC2", false, prov, detail::labels(alg, {a, b}), "no bounded refinement"};
        break;
      }
    }
    if (!bc2.passed) break;
  }
  report.add(bc2);

  // (BC3): every nonzero element has a nonzero bounded element way inside it.
  ConditionResult bc3{"BC3", true, prov, {}, {}};
  for (const auto& a : univ) {
    if (a.is_empty()) continue;
    bool found = false;
    std::vector<EpSet> cands;
    if (alg.is_finite()) {
      cands = univ;
    } else {
      cands = {a};
      if (auto n = a.min_element()) cands.push_back(EpSet::singleton(*n));
      for (const auto& e : univ) cands.push_back(e);
    }
    for (const auto& b : cands)
      if (alg.contains(b) && !b.is_empty() && l.is_bounded(b) && l.way_inside(b, a)) {
        found = true;
        break;
      }
    if (!found) {
      bc3 = {"BC3", false, prov, detail::labels(alg, {a}), "no nonzero bounded element way inside"};
      break;
    }
  }
  report.add(bc3);

  return report;
}

}  // namespace lcaw
