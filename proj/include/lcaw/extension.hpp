#pragma once

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "contact.hpp"
#include "rc_algebra.hpp"
#include "report.hpp"

namespace lcaw {

/** A normal contact relation C over an LCA encodes a compactification when
 * it extends rho ((RC1)) and agrees with rho against bounded elements
 * ((RC2)). */
inline ConditionReport is_admissible_ncr(const Lca& l, const ContactRelation& c,
                                         const CheckOptions& opts = {}) {
  const Algebra& alg = l.algebra;
  ConditionReport report = check_nca(alg, c, opts);
  Provenance prov;
  auto univ = detail::element_universe(alg, opts, prov);

  ConditionResult rc1{"RC1", true, prov, {}, {}};
  for (const auto& a : univ) {
    for (const auto& b : univ)
      if (l.rho.contact(a, b) && !c.contact(a, b)) {
        rc1 = {"RC1", false, prov, detail::labels(alg, {a, b}), "rho pair not in C"};
        break;
      }
    if (!rc1.passed) break;
  }
  report.add(rc1);

  ConditionResult rc2{"RC2", true, prov, {}, {}};
  for (const auto& a : univ) {
    for (const auto& b : univ) {
      if (!l.is_bounded(b)) continue;
      if (c.contact(a, b) && !l.rho.contact(a, b)) {
        rc2 = {"RC2", false, prov, detail::labels(alg, {a, b}),
               "C pair with bounded right side not in rho"};
        break;
      }
    }
    if (!rc2.passed) break;
  }
  report.add(rc2);
  return report;
}

/** The relation of the one-point compactification; smallest admissible. */
inline ContactRelation alexandroff_ncr(const Lca& l) { return c_rho(l); }

/** The relation of the largest compactification.  On a finite algebra the
 * dyadic interpolation family collapses: a and b are apart exactly when
 * some reflexively-way-inside element separates them. */
inline ContactRelation beta_ncr(const Lca& l) {
  const Algebra& alg = l.algebra;
  if (alg.is_finite()) {
    std::set<std::pair<std::uint64_t, std::uint64_t>> pairs;
    for (std::uint64_t ma = 0; ma < alg.size(); ++ma)
      for (std::uint64_t mb = 0; mb < alg.size(); ++mb) {
        EpSet a = alg.element(ma), b = alg.element(mb);
        bool separated = false;
        for (std::uint64_t mc = 0; mc < alg.size() && !separated; ++mc) {
          EpSet c = alg.element(mc);
          if (l.way_inside(c, c) && l.way_inside(a, c) &&
              l.way_inside(c, alg.complement(b)))
            separated = true;
        }
        if (!separated) pairs.insert({ma, mb});
      }
    return ContactRelation::from_table(alg, "beta", std::move(pairs));
  }
  if (l.rho.kernel().kind() == "overlap" && l.bounded.kind() == Ideal::Kind::finite_elements)
    return ContactRelation::overlap(alg);  // discrete case: rho is already largest
  throw unsupported_error("beta relation is closed-form only for overlap symbolic algebras");
}

/** Supremum of admissible relations: apart iff one interpolant witnesses
 * apartness simultaneously for every member relation. */
inline ContactRelation sup_ncr(const Lca& l, const std::vector<ContactRelation>& cs,
                               const CheckOptions& opts = {}) {
  if (cs.empty()) throw input_error("supremum of an empty family");
  for (const auto& c : cs)
    if (!is_admissible_ncr(l, c, opts).all_passed())
      throw input_error("supremum input is not an admissible relation");
  const Algebra& alg = l.algebra;
  if (alg.is_finite()) {
    std::set<std::pair<std::uint64_t, std::uint64_t>> pairs;
    for (std::uint64_t ma = 0; ma < alg.size(); ++ma)
      for (std::uint64_t mb = 0; mb < alg.size(); ++mb) {
        EpSet a = alg.element(ma), b = alg.element(mb);
        bool separated = false;
        for (std::uint64_t mc = 0; mc < alg.size() && !separated; ++mc) {
          EpSet c = alg.element(mc);
          bool all = true;
          for (const auto& cm : cs)
            if (!(cm.way_inside(a, c) && cm.way_inside(c, alg.complement(b)) &&
                  cm.way_inside(c, c)))
              all = false;
          if (all) separated = true;
        }
        if (!separated) pairs.insert({ma, mb});
      }
    return ContactRelation::from_table(alg, "sup", std::move(pairs));
  }
  // symbolic: the partition relations, where the supremum is the common
  // refinement of the end partitions
  unsigned lcm_mod = 1;
  for (const auto& c : cs) {
    const auto& k = c.kernel();
    unsigned m;
    if (k.kind() == "partition")
      m = static_cast<const PartitionEndsKernel&>(k).modulus();
    else if (k.kind() == "c_rho")
      m = 1;  // one end: the one-point compactification
    else
      throw unsupported_error("symbolic supremum needs partition-style relations");
    lcm_mod = static_cast<unsigned>(std::lcm(lcm_mod, m));
  }
  return partition_ends(alg, lcm_mod);
}

enum class OrderVerdict { equal, less, greater, incomparable };

inline const char* to_string(OrderVerdict v) {
  switch (v) {
    case OrderVerdict::equal: return "equal";
    case OrderVerdict::less: return "less";
    case OrderVerdict::greater: return "greater";
    case OrderVerdict::incomparable: return "incomparable";
  }
  return "?";
}

/** Comparison in the compactification order: C1 below C2 iff C2 is the
 * smaller relation (more pairs pulled apart means a larger extension). */
struct CompareResult {
  OrderVerdict verdict = OrderVerdict::equal;
  Provenance provenance = Provenance::exhaustive;
  std::vector<std::string> only_in_first;   // witness pair in C1 minus C2
  std::vector<std::string> only_in_second;  // witness pair in C2 minus C1
};

inline CompareResult compare_ncr(const Algebra& alg, const ContactRelation& c1,
                                 const ContactRelation& c2, const CheckOptions& opts = {}) {
  CompareResult r;
  auto univ = detail::element_universe(alg, opts, r.provenance);
  for (const auto& a : univ)
    for (const auto& b : univ) {
      bool in1 = c1.contact(a, b), in2 = c2.contact(a, b);
      if (in1 && !in2 && r.only_in_first.empty()) r.only_in_first = detail::labels(alg, {a, b});
      if (in2 && !in1 && r.only_in_second.empty()) r.only_in_second = detail::labels(alg, {a, b});
    }
  bool first_extra = !r.only_in_first.empty();
  bool second_extra = !r.only_in_second.empty();
  if (!first_extra && !second_extra) r.verdict = OrderVerdict::equal;
  else if (first_extra && !second_extra) r.verdict = OrderVerdict::less;  // C2 subset of C1
  else if (!first_extra && second_extra) r.verdict = OrderVerdict::greater;
  else r.verdict = OrderVerdict::incomparable;
  return r;
}

/** Membership of a candidate (rho1, IB1) in the locally compact extension
 * set of a base LCA on the same algebra. */
inline ConditionReport lca_extension_membership(const Lca& base, const Lca& cand,
                                                const CheckOptions& opts = {}) {
  const Algebra& alg = base.algebra;
  ConditionReport r;
  Provenance prov;
  auto univ = detail::element_universe(alg, opts, prov);

  ConditionResult la1{"LA1", true, prov, {}, {}};
  for (const auto& a : univ) {
    for (const auto& b : univ)
      if (base.rho.contact(a, b) && !cand.rho.contact(a, b)) {
        la1 = {"LA1", false, prov, detail::labels(alg, {a, b}), "base contact lost"};
        break;
      }
    if (!la1.passed) break;
  }
  r.add(la1);

  ConditionResult la2{"LA2", true, prov, {}, {}};
  for (const auto& a : univ)
    if (base.is_bounded(a) && !cand.is_bounded(a)) {
      la2 = {"LA2", false, prov, detail::labels(alg, {a}), "base bounded element lost"};
      break;
    }
  r.add(la2);

  ConditionResult la3{"LA3", true, prov, {}, {}};
  for (const auto& b : univ) {
    if (!base.is_bounded(b)) continue;
    for (const auto& a : univ)
      if (cand.rho.contact(b, a) && !base.rho.contact(b, a)) {
        la3 = {"LA3", false, prov, detail::labels(alg, {b, a}),
               "new contact at a base-bounded element"};
        break;
      }
    if (!la3.passed) break;
  }
  r.add(la3);
  return r;
}

/** Order verdicts between two members of the extension set: cand1 below
 * cand2 iff rho2 and IB2 are contained in rho1 and IB1; the strict order
 * adds that every cand1-bounded ultrafilter meets IB2 through rho1. */
inline ConditionReport lca_extension_order(const Lca& base, const Lca& cand1, const Lca& cand2,
                                           const CheckOptions& opts = {}) {
  if (!lca_extension_membership(base, cand1, opts).all_passed())
    throw input_error("first candidate is not in the extension set");
  if (!lca_extension_membership(base, cand2, opts).all_passed())
    throw input_error("second candidate is not in the extension set");
  const Algebra& alg = base.algebra;
  ConditionReport r;
  Provenance prov;
  auto univ = detail::element_universe(alg, opts, prov);

  ConditionResult ord{"preceq", true, prov, {}, {}};
  for (const auto& a : univ) {
    for (const auto& b : univ)
      if (cand2.rho.contact(a, b) && !cand1.rho.contact(a, b)) {
        ord = {"preceq", false, prov, detail::labels(alg, {a, b}), "rho2 not inside rho1"};
        break;
      }
    if (!ord.passed) break;
  }
  if (ord.passed)
    for (const auto& a : univ)
      if (cand2.is_bounded(a) && !cand1.is_bounded(a)) {
        ord = {"preceq", false, prov, detail::labels(alg, {a}), "IB2 not inside IB1"};
        break;
      }
  r.add(ord);

  ConditionResult strict{"preceq_s", ord.passed, prov, ord.witness, ord.note};
  if (strict.passed) {
    for (const auto& u : ultrafilters(alg)) {
      bool bounded_u = false;
      if (u.kind() == Ultrafilter::Kind::principal)
        bounded_u = cand1.is_bounded(u.atom());
      else
        bounded_u = cand1.bounded.kind() == Ideal::Kind::all;
      if (!bounded_u) continue;
      bool hit = false;
      for (const auto& b : univ) {
        if (!cand2.is_bounded(b)) continue;
        bool touches_all = true;
        if (u.kind() == Ultrafilter::Kind::principal) {
          touches_all = cand1.rho.contact(b, u.atom());
        } else {
          // include the complement of b: the canonical member of a free
          // ultrafilter that a too-small b fails to reach
          std::vector<EpSet> cs = univ;
          EpSet cb = alg.complement(b);
          if (alg.contains(cb)) cs.push_back(cb);
          for (const auto& c : cs)
            if (u.contains(c) == std::optional<bool>{true} && !cand1.rho.contact(b, c))
              touches_all = false;
        }
        if (touches_all) hit = true;
      }
      if (!hit) {
        strict = {"preceq_s", false, prov,
                  {u.kind() == Ultrafilter::Kind::principal ? alg.label_of(u.atom())
                                                            : u.descriptor().to_string()},
                  "bounded ultrafilter not met by IB2 through rho1"};
        break;
      }
    }
  }
  r.add(strict);
  return r;
}

/** A finite local proximity space: a contact relation on the full powerset
 * of the points, with a boundedness ideal of point sets. */
struct LocalProximitySpace {
  std::vector<std::string> points;
  std::set<std::pair<Mask, Mask>> rel;  // symmetric table over subsets
  std::set<Mask> bounded;

  unsigned n() const { return static_cast<unsigned>(points.size()); }
  Mask full() const { return static_cast<Mask>((std::uint64_t{1} << points.size()) - 1); }

  bool contact(Mask m, Mask k) const { return rel.count({m, k}) > 0; }
  bool way_inside(Mask m, Mask k) const { return !contact(m, full() & ~k); }
  bool is_bounded(Mask m) const { return bounded.count(m) > 0; }

  /** Atom-determined relation: overlap plus the given symmetric point
   * pairs, extended additively. */
  static LocalProximitySpace from_point_pairs(const std::vector<std::string>& pts,
                                              const std::set<std::pair<unsigned, unsigned>>& pp,
                                              const std::set<Mask>& bnd) {
    LocalProximitySpace p;
    p.points = pts;
    p.bounded = bnd;
    for (Mask m = 0; m <= p.full(); ++m)
      for (Mask k = 0; k <= p.full(); ++k) {
        bool c = (m & k) != 0;
        for (auto [i, j] : pp)
          if (((m >> i) & 1 && (k >> j) & 1) || ((m >> j) & 1 && (k >> i) & 1)) c = true;
        if (c && m != 0 && k != 0) p.rel.insert({m, k});
      }
    return p;
  }

  static LocalProximitySpace discrete(const std::vector<std::string>& pts) {
    std::set<Mask> bnd;
    for (Mask m = 0; m <= static_cast<Mask>((std::uint64_t{1} << pts.size()) - 1); ++m)
      bnd.insert(m);
    return from_point_pairs(pts, {}, bnd);
  }

  bool separated() const {
    for (unsigned i = 0; i < n(); ++i)
      for (unsigned j = 0; j < n(); ++j)
        if (i != j && contact(Mask{1} << i, Mask{1} << j)) return false;
    return true;
  }

  /** Topology whose closed sets absorb the proximity closure
   * cl(M) = {x : {x} rho M}. */
  FiniteSpace induced_topology() const {
    auto cl = [&](Mask m) {
      Mask out = 0;
      for (unsigned i = 0; i < n(); ++i)
        if (contact(Mask{1} << i, m)) out |= Mask{1} << i;
      return out;
    };
    std::set<Mask> opens;
    for (Mask m = 0; m <= full(); ++m)
      if ((cl(m) & ~m) == 0) opens.insert(full() & ~m);
    return FiniteSpace::from_opens(points, opens);
  }

  ConditionReport validate() const {
    ConditionReport r;
    auto add = [&](const std::string& name, bool ok, std::vector<std::string> wit,
                   const std::string& note) {
      r.add({name, ok, Provenance::exhaustive, std::move(wit), note});
    };
    auto lbl = [&](Mask m) {
      std::string out = "{";
      bool first = true;
      for (unsigned i = 0; i < n(); ++i)
        if (m & (Mask{1} << i)) {
          if (!first) out += ",";
          out += points[i];
          first = false;
        }
      return out + "}";
    };

    bool ok = true;
    std::vector<std::string> wit;
    for (Mask m = 0; m <= full() && ok; ++m) {
      if (contact(m, 0) || contact(0, m)) {
        ok = false;
        wit = {lbl(m), lbl(0)};
      } else if (m != 0 && !contact(m, m)) {
        ok = false;
        wit = {lbl(m), lbl(m)};
      }
    }
    add("C1", ok, wit, ok ? "" : "zero in contact or missing self-contact");

    ok = true;
    wit.clear();
    for (Mask m = 0; m <= full() && ok; ++m)
      for (Mask k = 0; k <= full(); ++k)
        if (contact(m, k) != contact(k, m)) {
          ok = false;
          wit = {lbl(m), lbl(k)};
          break;
        }
    add("C2", ok, wit, ok ? "" : "asymmetric pair");

    ok = true;
    wit.clear();
    for (Mask m = 0; m <= full() && ok; ++m)
      for (Mask k = 0; k <= full() && ok; ++k)
        for (Mask j = 0; j <= full(); ++j)
          if (contact(m, k | j) != (contact(m, k) || contact(m, j))) {
            ok = false;
            wit = {lbl(m), lbl(k), lbl(j)};
            break;
          }
    add("C3", ok, wit, ok ? "" : "additivity broken");

    ok = true;
    wit.clear();
    for (Mask m = 0; m <= full() && ok; ++m)
      for (Mask k = 0; k <= full(); ++k)
        if ((m & k) && !contact(m, k)) {
          ok = false;
          wit = {lbl(m), lbl(k)};
          break;
        }
    add("C4", ok, wit, ok ? "" : "overlapping pair apart");

    ok = bounded.count(0) > 0;
    wit.clear();
    for (Mask m : bounded) {
      for (Mask k = 0; k <= full(); ++k)
        if ((k & ~m) == 0 && !bounded.count(k)) {
          ok = false;
          wit = {lbl(m), lbl(k)};
        }
      for (Mask k : bounded)
        if (!bounded.count(m | k)) {
          ok = false;
          wit = {lbl(m), lbl(k)};
        }
    }
    add("ideal", ok, wit, ok ? "" : "boundedness not an ideal");

    ok = true;
    wit.clear();
    for (Mask m : bounded) {
      for (Mask k = 0; k <= full() && ok; ++k) {
        if (!way_inside(m, k)) continue;
        bool found = false;
        for (Mask b : bounded)
          if (way_inside(m, b) && way_inside(b, k)) found = true;
        if (!found) {
          ok = false;
          wit = {lbl(m), lbl(k)};
        }
      }
      if (!ok) break;
    }
    add("BC1", ok, wit, ok ? "" : "no bounded interpolant");

    ok = true;
    wit.clear();
    for (Mask m = 0; m <= full() && ok; ++m)
      for (Mask k = 0; k <= full(); ++k) {
        if (!contact(m, k)) continue;
        bool found = false;
        for (Mask d : bounded)
          if (contact(m, k & d)) found = true;
        if (!found) {
          ok = false;
          wit = {lbl(m), lbl(k)};
          break;
        }
      }
    add("BC2", ok, wit, ok ? "" : "no bounded refinement");

    ok = true;
    wit.clear();
    for (Mask m = 1; m <= full() && ok; ++m) {
      bool found = false;
      for (Mask b : bounded)
        if (b != 0 && way_inside(b, m)) found = true;
      if (!found) {
        ok = false;
        wit = {lbl(m)};
      }
    }
    add("BC3", ok, wit, ok ? "" : "no nonzero bounded element way inside");

    r.add({"separated", separated(), Provenance::exhaustive, {}, "reported, not asserted"});
    return r;
  }
};

/** Restriction of a local proximity space to its regular closed algebra,
 * with the admissibility report for the induced topology. */
struct RestrictedProximity {
  FiniteSpace topo;
  RcAlgebra rc;
  Lca lca;  // (RC(X), rho', IB') over the powerset of RC atoms
  ConditionReport report;
};

inline RestrictedProximity restrict_local_proximity(const LocalProximitySpace& p) {
  RestrictedProximity out{p.induced_topology(), rc_algebra(p.induced_topology()),
                          Lca{Algebra::powerset({}), ContactRelation::overlap(Algebra::powerset({})), Ideal::all()}, {}};
  const Algebra& alg = out.rc.lca.algebra;
  std::set<std::pair<std::uint64_t, std::uint64_t>> pairs;
  for (std::uint64_t ma = 0; ma < alg.size(); ++ma)
    for (std::uint64_t mb = 0; mb < alg.size(); ++mb)
      if (p.contact(out.rc.point_set(alg.element(ma)), out.rc.point_set(alg.element(mb))))
        pairs.insert({ma, mb});
  ContactRelation rho = ContactRelation::from_table(alg, "restricted", std::move(pairs));
  EpSet gen = alg.zero();
  for (std::uint64_t m = 0; m < alg.size(); ++m)
    if (p.is_bounded(out.rc.point_set(alg.element(m)))) gen = alg.join(gen, alg.element(m));
  out.lca = Lca{alg, rho, Ideal::principal(gen)};

  ConditionReport& r = out.report;
  r.add({"separated", p.separated(), Provenance::exhaustive, {}, "reported, not asserted"});
  r.merge(check_lca(out.lca));

  // (A1): intersecting regular closed sets are in contact
  bool a1 = true;
  std::vector<std::string> wit;
  for (std::uint64_t ma = 0; ma < alg.size() && a1; ++ma)
    for (std::uint64_t mb = 0; mb < alg.size(); ++mb) {
      Mask fa = out.rc.point_set(alg.element(ma));
      Mask fb = out.rc.point_set(alg.element(mb));
      if ((fa & fb) && !out.lca.rho.contact(alg.element(ma), alg.element(mb))) {
        a1 = false;
        wit = {out.topo.label(fa), out.topo.label(fb)};
        break;
      }
    }
  r.add({"A1", a1, Provenance::exhaustive, wit, {}});

  // (A2): points interior to a regular closed set sit interior to a
  // bounded one way inside it
  bool a2 = true;
  wit.clear();
  for (std::uint64_t ma = 0; ma < alg.size() && a2; ++ma) {
    Mask f = out.rc.point_set(alg.element(ma));
    for (unsigned x = 0; x < out.topo.n(); ++x) {
      if (!(out.topo.interior(f) & (Mask{1} << x))) continue;
      bool found = false;
      for (std::uint64_t mg = 0; mg < alg.size() && !found; ++mg) {
        EpSet g = alg.element(mg);
        if (out.lca.is_bounded(g) && (out.topo.interior(out.rc.point_set(g)) & (Mask{1} << x)) &&
            out.lca.way_inside(g, alg.element(ma)))
          found = true;
      }
      if (!found) {
        a2 = false;
        wit = {out.topo.label(f), out.topo.points()[x]};
        break;
      }
    }
  }
  r.add({"A2", a2, Provenance::exhaustive, wit, {}});
  return out;
}

/** Reconstruction of the unique separated local proximity space from an
 * admissible regular-closed pair. */
inline LocalProximitySpace reconstruct_local_proximity(const RestrictedProximity& input) {
  const Algebra& alg = input.rc.lca.algebra;
  const FiniteSpace& x = input.topo;
  LocalProximitySpace p;
  p.points = x.points();

  // bounded: subsets of the point set of some bounded regular closed element
  for (Mask m = 0; m <= p.full(); ++m)
    for (std::uint64_t mb = 0; mb < alg.size(); ++mb)
      if (input.lca.is_bounded(alg.element(mb)) &&
          (m & ~input.rc.point_set(alg.element(mb))) == 0) {
        p.bounded.insert(m);
        break;
      }

  // apartness: every bounded trace of one side can be pushed inside a
  // bounded regular closed set apart from a regular closed neighborhood of
  // the other side
  auto apart = [&](Mask m, Mask nn) {
    for (Mask b : p.bounded) {
      bool found = false;
      for (std::uint64_t mf = 0; mf < alg.size() && !found; ++mf) {
        EpSet f = alg.element(mf);
        if (!input.lca.is_bounded(f)) continue;
        if ((m & b & ~x.interior(input.rc.point_set(f))) != 0) continue;
        for (std::uint64_t mg = 0; mg < alg.size() && !found; ++mg) {
          EpSet g = alg.element(mg);
          if ((nn & ~x.interior(input.rc.point_set(g))) != 0) continue;
          if (!input.lca.rho.contact(f, g)) found = true;
        }
      }
      if (!found) return false;
    }
    return true;
  };
  for (Mask m = 0; m <= p.full(); ++m)
    for (Mask k = 0; k <= p.full(); ++k)
      if (m != 0 && k != 0 && !apart(m, k)) p.rel.insert({m, k});
  return p;
}

/** Wallman-type criterion: the compactification of C is Wallman iff some
 * meet-closed family agrees with rho against C on itself and interpolates
 * every way-inside pair through two of its members. */
inline ConditionReport wallman_check(const Lca& l, const ContactRelation& c,
                                     const std::vector<EpSet>& family,
                                     const CheckOptions& opts = {}) {
  const Algebra& alg = l.algebra;
  ConditionReport r;
  Provenance prov;
  auto univ = detail::element_universe(alg, opts, prov);

  bool meet_closed = true;
  std::vector<std::string> wit;
  auto in_family = [&](const EpSet& e) {
    for (const auto& f : family)
      if (f == e) return true;
    return false;
  };
  for (const auto& a : family)
    for (const auto& b : family)
      if (!in_family(alg.meet(a, b))) {
        meet_closed = false;
        wit = detail::labels(alg, {a, b});
      }
  r.add({"meet_closed", meet_closed, Provenance::exhaustive, wit, {}});

  bool clause1 = true;
  wit.clear();
  for (const auto& a : family)
    for (const auto& b : family)
      if (l.rho.contact(a, b) != c.contact(a, b)) {
        clause1 = false;
        wit = detail::labels(alg, {a, b});
      }
  r.add({"clause1", clause1, prov, wit, clause1 ? "" : "rho and C disagree on the family"});

  bool clause2 = true;
  wit.clear();
  for (const auto& a : univ) {
    for (const auto& cc : univ) {
      if (!c.way_inside(a, cc)) continue;
      bool found = false;
      for (const auto& b1 : family)
        for (const auto& b2 : family)
          if (alg.leq(a, b1) && alg.leq(b1, alg.complement(b2)) &&
              alg.leq(alg.complement(b2), cc))
            found = true;
      if (!found) {
        clause2 = false;
        wit = detail::labels(alg, {a, cc});
        break;
      }
    }
    if (!clause2) break;
  }
  r.add({"clause2", clause2, prov, wit, clause2 ? "" : "no two-step interpolation in the family"});
  return r;
}

/** The proximity induced on a dense subspace by a finite compactification:
 * two sets are close iff their closures upstairs meet. */
inline ContactRelation njastad_delta(const std::vector<std::string>& labels,
                                     const FiniteSpace& cx, const std::vector<unsigned>& embed) {
  if (embed.size() != labels.size()) throw input_error("one image point per source point");
  std::set<unsigned> seen(embed.begin(), embed.end());
  if (seen.size() != embed.size()) throw input_error("embedding must be injective");
  Mask range = 0;
  for (unsigned i : embed) {
    if (i >= cx.n()) throw input_error("image point out of range");
    range |= Mask{1} << i;
  }
  if (!cx.is_dense(range)) throw input_error("embedding must have dense image");
  Algebra alg = Algebra::powerset(labels);
  std::set<std::pair<unsigned, unsigned>> pairs;
  for (unsigned i = 0; i < labels.size(); ++i)
    for (unsigned j = i + 1; j < labels.size(); ++j)
      if (cx.closure(Mask{1} << embed[i]) & cx.closure(Mask{1} << embed[j]))
        pairs.insert({i, j});
  return ContactRelation::atom_graph(alg, pairs);
}

}  // namespace lcaw
