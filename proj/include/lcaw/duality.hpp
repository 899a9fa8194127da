#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "contact.hpp"
#include "rc_algebra.hpp"
#include "report.hpp"

namespace lcaw {

/** A cluster of a contact relation over a finite algebra: a maximal set of
 * mutually touching elements, stored extensionally as element masks. */
struct Cluster {
  std::set<std::uint64_t> members;
  unsigned witness_atom = 0;  // atom whose ultrafilter generated the cluster
  bool bounded = false;

  bool contains(std::uint64_t mask) const { return members.count(mask) > 0; }
  bool operator==(const Cluster& o) const { return members == o.members; }
  bool operator<(const Cluster& o) const { return members < o.members; }
};

/** sigma_u for the principal ultrafilter at an atom: {a : a C atom}; by
 * additivity this equals {a : aCb for all b in u}. */
inline Cluster cluster_of_atom(const Algebra& alg, const ContactRelation& c, unsigned atom_index) {
  Cluster sigma;
  sigma.witness_atom = atom_index;
  EpSet p = alg.atom(atom_index);
  for (std::uint64_t m = 0; m < alg.size(); ++m)
    if (c.contact(alg.element(m), p)) sigma.members.insert(m);
  return sigma;
}

/** All clusters of a finite contact algebra, deduplicated, in canonical
 * member-set order.  Every cluster of a finite algebra arises from an atom. */
inline std::vector<Cluster> clusters(const Algebra& alg, const ContactRelation& c) {
  std::vector<Cluster> out;
  for (unsigned i = 0; i < alg.atom_count(); ++i) {
    Cluster sigma = cluster_of_atom(alg, c, i);
    bool dup = false;
    for (const auto& o : out)
      if (o == sigma) dup = true;
    if (!dup) out.push_back(sigma);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/** Is the member set a cluster: pairwise contact, prime over joins, maximal. */
inline bool is_cluster(const Algebra& alg, const ContactRelation& c,
                       const std::set<std::uint64_t>& sigma, std::string* why = nullptr) {
  for (std::uint64_t a : sigma)
    for (std::uint64_t b : sigma)
      if (!c.contact(alg.element(a), alg.element(b))) {
        if (why) *why = "members not in contact: " + alg.label_of(alg.element(a)) + ", " +
                        alg.label_of(alg.element(b));
        return false;
      }
  for (std::uint64_t m = 0; m < alg.size(); ++m) {
    EpSet a = alg.element(m);
    if (sigma.count(m)) {
      // primeness: a join in the cluster has a joinand in the cluster
      bool prime_ok = true;
      for (std::uint64_t b = 0; b < alg.size(); ++b) {
        std::uint64_t d = m & ~b;
        if ((b | d) == m && !sigma.count(b) && !sigma.count(d)) prime_ok = false;
      }
      if (!prime_ok) {
        if (why) *why = "join member with no joinand inside: " + alg.label_of(a);
        return false;
      }
    } else {
      bool touches_all = true;
      for (std::uint64_t b : sigma)
        if (!c.contact(a, alg.element(b))) touches_all = false;
      if (touches_all && m != 0) {
        if (why) *why = "not maximal: " + alg.label_of(a) + " touches every member";
        return false;
      }
    }
  }
  return true;
}

/** Bounded clusters of (A, C_rho): the points of the dual space. */
inline std::vector<Cluster> bounded_clusters(const Lca& l) {
  ContactRelation cr = c_rho(l);
  std::vector<Cluster> all = clusters(l.algebra, cr);
  std::vector<Cluster> out;
  for (Cluster sigma : all) {
    for (std::uint64_t m : sigma.members)
      if (l.is_bounded(l.algebra.element(m))) sigma.bounded = true;
    if (sigma.bounded) out.push_back(sigma);
  }
  return out;
}

/** The dual space of a finite local contact algebra: points are bounded
 * clusters, closed sets are generated by the lambda^g images. */
struct DualSpace {
  Lca source;
  std::vector<Cluster> points;  // canonical member-set order
  FiniteSpace space;

  /** Set of points whose cluster contains the element. */
  Mask lambda_g(const EpSet& a) const {
    std::uint64_t m = source.algebra.mask_of(a);
    Mask out = 0;
    for (unsigned i = 0; i < points.size(); ++i)
      if (points[i].contains(m)) out |= Mask{1} << i;
    return out;
  }

  /** Index of the point with the given member set. */
  unsigned point_index(const Cluster& sigma) const {
    for (unsigned i = 0; i < points.size(); ++i)
      if (points[i] == sigma) return i;
    throw std::logic_error("cluster is not a point of the dual space");
  }
};

inline DualSpace psi_a_object(const Lca& l) {
  if (!l.algebra.is_finite())
    throw unsupported_error("dual space of a symbolic algebra is not finitely enumerable");
  DualSpace d{l, bounded_clusters(l), FiniteSpace::discrete(0u)};
  // closed family: lambda^g images, closed under finite unions and intersections
  std::set<Mask> closed;
  auto lam = [&](std::uint64_t m) {
    Mask out = 0;
    for (unsigned i = 0; i < d.points.size(); ++i)
      if (d.points[i].contains(m)) out |= Mask{1} << i;
    return out;
  };
  for (std::uint64_t m = 0; m < l.algebra.size(); ++m) closed.insert(lam(m));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Mask> cur(closed.begin(), closed.end());
    for (Mask a : cur)
      for (Mask b : cur) {
        if (closed.insert(a & b).second) grew = true;
        if (closed.insert(a | b).second) grew = true;
      }
  }
  Mask full = static_cast<Mask>((std::uint64_t{1} << d.points.size()) - 1);
  std::set<Mask> opens;
  for (Mask c : closed) opens.insert(full & ~c);
  std::vector<std::string> labels;
  for (unsigned i = 0; i < d.points.size(); ++i) labels.push_back("c" + std::to_string(i));
  d.space = FiniteSpace::from_opens(labels, opens);
  return d;
}

/** Conditions classifying a hom phi: (A,rho,IBa) -> (B,eta,IBb) as a
 * morphism of the various categories; exhaustive over finite algebras. */
inline ConditionReport check_morphism_conditions(const Hom& phi, const Lca& la, const Lca& lb) {
  const Algebra& A = la.algebra;
  const Algebra& B = lb.algebra;
  if (!A.is_finite() || !B.is_finite())
    throw unsupported_error("morphism conditions are checked over finite algebras only");
  ConditionReport r;
  UpperAdjoint adj(phi);
  ContactRelation ca = c_rho(la);
  ContactRelation cb = c_rho(lb);
  auto add = [&](const std::string& name, bool ok, std::vector<std::string> wit,
                 const std::string& note) {
    r.add({name, ok, Provenance::exhaustive, std::move(wit), note});
  };

  // (EL1): a eta b implies adj(a) rho adj(b)
  {
    bool ok = true;
    std::vector<std::string> wit;
    for (std::uint64_t ma = 0; ma < B.size() && ok; ++ma)
      for (std::uint64_t mb = 0; mb < B.size() && ok; ++mb) {
        EpSet a = B.element(ma), b = B.element(mb);
        if (lb.rho.contact(a, b) && !la.rho.contact(adj.apply(a), adj.apply(b))) {
          ok = false;
          wit = {B.label_of(a), B.label_of(b)};
        }
      }
    add("EL1", ok, wit, ok ? "" : "contact pair with apart adjoints");
  }

  // (L2): adjoint maps bounded to bounded
  {
    bool ok = true;
    std::vector<std::string> wit;
    for (std::uint64_t mb = 0; mb < B.size() && ok; ++mb) {
      EpSet b = B.element(mb);
      if (lb.is_bounded(b) && !la.is_bounded(adj.apply(b))) {
        ok = false;
        wit = {B.label_of(b)};
      }
    }
    add("L2", ok, wit, ok ? "" : "bounded element with unbounded adjoint");
  }

  // (L3): phi maps bounded to bounded
  {
    bool ok = true;
    std::vector<std::string> wit;
    for (std::uint64_t ma = 0; ma < A.size() && ok; ++ma) {
      EpSet a = A.element(ma);
      if (la.is_bounded(a) && !lb.is_bounded(phi.apply(a))) {
        ok = false;
        wit = {A.label_of(a)};
      }
    }
    add("L3", ok, wit, ok ? "" : "bounded element with unbounded image");
  }

  // (LS): for bounded a,b: adj(a) rho adj(b) implies a eta b
  // (ELS): the same over all elements
  auto ls_like = [&](bool bounded_only) {
    bool ok = true;
    std::vector<std::string> wit;
    for (std::uint64_t ma = 0; ma < B.size() && ok; ++ma)
      for (std::uint64_t mb = 0; mb < B.size() && ok; ++mb) {
        EpSet a = B.element(ma), b = B.element(mb);
        if (bounded_only && !(lb.is_bounded(a) && lb.is_bounded(b))) continue;
        if (la.rho.contact(adj.apply(a), adj.apply(b)) && !lb.rho.contact(a, b)) {
          ok = false;
          wit = {B.label_of(a), B.label_of(b)};
        }
      }
    return std::pair{ok, wit};
  };
  {
    auto [ok, wit] = ls_like(true);
    add("LS", ok, wit, ok ? "" : "adjoints in contact but the pair is apart");
  }
  {
    auto [ok, wit] = ls_like(false);
    add("ELS", ok, wit, ok ? "" : "adjoints in contact but the pair is apart");
  }

  // (FS): adj(a) C_rho adj(b) implies a C_eta b
  {
    bool ok = true;
    std::vector<std::string> wit;
    for (std::uint64_t ma = 0; ma < B.size() && ok; ++ma)
      for (std::uint64_t mb = 0; mb < B.size() && ok; ++mb) {
        EpSet a = B.element(ma), b = B.element(mb);
        if (ca.contact(adj.apply(a), adj.apply(b)) && !cb.contact(a, b)) {
          ok = false;
          wit = {B.label_of(a), B.label_of(b)};
        }
      }
    add("FS", ok, wit, ok ? "" : "adjoints in one-point contact but the pair is apart");
  }

  // (IS): every bounded ultrafilter of A is hit: exists bounded atom q of B
  // with adj(q) rho p
  {
    bool ok = true;
    std::vector<std::string> wit;
    for (unsigned i = 0; i < A.atom_count() && ok; ++i) {
      if (!la.is_bounded(A.atom(i))) continue;
      bool hit = false;
      for (unsigned j = 0; j < B.atom_count(); ++j)
        if (lb.is_bounded(B.atom(j)) && la.rho.contact(adj.apply(B.atom(j)), A.atom(i)))
          hit = true;
      if (!hit) {
        ok = false;
        wit = {A.label_of(A.atom(i))};
      }
    }
    add("IS", ok, wit, ok ? "" : "bounded ultrafilter not reached by any adjoint");
  }

  // (LO): a in A, b bounded in B, a rho adj(b) implies phi(a) eta b
  {
    bool ok = true;
    std::vector<std::string> wit;
    for (std::uint64_t ma = 0; ma < A.size() && ok; ++ma)
      for (std::uint64_t mb = 0; mb < B.size() && ok; ++mb) {
        EpSet a = A.element(ma), b = B.element(mb);
        if (!lb.is_bounded(b)) continue;
        if (la.rho.contact(a, adj.apply(b)) && !lb.rho.contact(phi.apply(a), b)) {
          ok = false;
          wit = {A.label_of(a), B.label_of(b)};
        }
      }
    add("LO", ok, wit, ok ? "" : "contact with an adjoint not carried to the image");
  }

  bool inj = phi.is_injective();
  bool surj = phi.is_surjective();
  add("injective", inj, {}, inj ? "" : "hom kills a nonzero element");
  add("surjective", surj, {}, surj ? "" : "hom misses a target element");
  add("boolean_iso", inj && surj, {}, inj && surj ? "" : "not a bijective hom");
  return r;
}

/** The dual map of a hom: each bounded cluster sigma_v of the target side
 * goes to the cluster generated by the adjoint of the witness atom. */
struct PsiMorphism {
  DualSpace from;  // dual of the hom's target algebra
  DualSpace to;    // dual of the hom's source algebra
  SpaceMap map;
};

inline PsiMorphism psi_a_morphism(const Hom& phi, const Lca& la, const Lca& lb) {
  ConditionReport pre = check_morphism_conditions(phi, la, lb);
  if (!pre.passed("EL1") || !pre.passed("L2"))
    throw input_error("dual map needs (EL1) and (L2); refused");
  DualSpace da = psi_a_object(la);
  DualSpace db = psi_a_object(lb);
  UpperAdjoint adj(phi);
  ContactRelation ca = c_rho(la);
  std::vector<unsigned> image(db.points.size());
  for (unsigned i = 0; i < db.points.size(); ++i) {
    // every atom generating this cluster must give the same image cluster
    bool first = true;
    for (unsigned q = 0; q < lb.algebra.atom_count(); ++q) {
      if (!lb.is_bounded(lb.algebra.atom(q))) continue;
      if (!(cluster_of_atom(lb.algebra, c_rho(lb), q) == db.points[i])) continue;
      EpSet seed = adj.apply(lb.algebra.atom(q));
      Cluster sigma;
      for (std::uint64_t m = 0; m < la.algebra.size(); ++m)
        if (ca.contact(la.algebra.element(m), seed)) sigma.members.insert(m);
      unsigned idx = da.point_index(sigma);
      if (first) {
        image[i] = idx;
        first = false;
      } else if (image[i] != idx) {
        throw std::logic_error("dual map depends on the witness ultrafilter");
      }
    }
    if (first) throw std::logic_error("dual point without a generating bounded atom");
  }
  return PsiMorphism{db, da, SpaceMap(db.space, da.space, image)};
}

/** Does the hom embed the source LCA: injective, reflects contact, reflects
 * boundedness. */
inline std::pair<bool, ConditionReport> is_lca_embedding(const Hom& phi, const Lca& la,
                                                         const Lca& lb) {
  const Algebra& A = la.algebra;
  ConditionReport r;
  bool inj = phi.is_injective();
  r.add({"injective", inj, Provenance::exhaustive, {}, inj ? "" : "kernel nontrivial"});

  bool refl = true;
  std::vector<std::string> wit;
  for (std::uint64_t ma = 0; ma < A.size() && refl; ++ma)
    for (std::uint64_t mb = 0; mb < A.size() && refl; ++mb) {
      EpSet a = A.element(ma), b = A.element(mb);
      if (la.rho.contact(a, b) != lb.rho.contact(phi.apply(a), phi.apply(b))) {
        refl = false;
        wit = {A.label_of(a), A.label_of(b)};
      }
    }
  r.add({"reflects_contact", refl, Provenance::exhaustive, wit, ""});

  bool reflb = true;
  wit.clear();
  for (std::uint64_t ma = 0; ma < A.size() && reflb; ++ma) {
    EpSet a = A.element(ma);
    if (la.is_bounded(a) != lb.is_bounded(phi.apply(a))) {
      reflb = false;
      wit = {A.label_of(a)};
    }
  }
  r.add({"reflects_boundedness", reflb, Provenance::exhaustive, wit, ""});
  return {r.all_passed(), r};
}

/** Factorization of a skeletal embedding f: X -> Y through the closure of
 * its image: a dense-range map followed by a closed inclusion, together
 * with the dual homs. */
struct EmbeddingFactorization {
  SpaceMap f1;  // X -> cl(f(X)), dense range
  SpaceMap f2;  // cl(f(X)) -> Y, closed inclusion
  Hom phi1;     // dual of f1, a Boolean isomorphism
  Hom phi2;     // dual of f2
  ConditionReport report;
};

inline EmbeddingFactorization factor_embedding(const SpaceMap& f) {
  MapPropertyReport props = map_properties(f);
  if (!props.get("homeo_embedding") || !props.get("skeletal"))
    throw input_error("factorization needs a skeletal homeomorphic embedding");
  const FiniteSpace& y = f.target;
  Mask mid_carrier = y.closure(f.range());
  std::vector<unsigned> mid_points;
  FiniteSpace mid = y.subspace(mid_carrier, &mid_points);
  std::map<unsigned, unsigned> y_to_mid;
  for (unsigned k = 0; k < mid_points.size(); ++k) y_to_mid[mid_points[k]] = k;
  std::vector<unsigned> im1;
  for (unsigned i = 0; i < f.source.n(); ++i) im1.push_back(y_to_mid.at(f.image[i]));
  SpaceMap f1(f.source, mid, im1);
  SpaceMap f2(mid, y, mid_points);

  RcAlgebra rx = rc_algebra(f.source);
  RcAlgebra rm = rc_algebra(mid);
  RcAlgebra ry = rc_algebra(y);
  Hom phi1 = dual_morphism(f1, rx, rm);
  Hom phi2 = dual_morphism(f2, rm, ry);

  ConditionReport rep;
  Hom composed = dual_morphism(f, rx, ry);
  Hom chained = Hom::compose(phi1, phi2);
  bool same = true;
  for (std::uint64_t m = 0; m < ry.lca.algebra.size(); ++m)
    if (!(composed.apply(ry.lca.algebra.element(m)) == chained.apply(ry.lca.algebra.element(m))))
      same = false;
  rep.add({"factorization_composes", same, Provenance::exhaustive, {}, ""});

  ConditionReport c2 = check_morphism_conditions(phi2, ry.lca, rm.lca);
  rep.add({"phi2_LS", c2.passed("LS"), Provenance::exhaustive, {}, ""});
  rep.add({"phi2_L2", c2.passed("L2"), Provenance::exhaustive, {}, ""});
  rep.add({"phi2_L3", c2.passed("L3"), Provenance::exhaustive, {}, ""});
  ConditionReport c1 = check_morphism_conditions(phi1, rm.lca, rx.lca);
  rep.add({"phi1_boolean_iso", c1.passed("boolean_iso"), Provenance::exhaustive, {}, ""});
  rep.add({"phi1_LO", c1.passed("LO"), Provenance::exhaustive, {}, ""});
  return EmbeddingFactorization{f1, f2, phi1, phi2, rep};
}

/** The unit of the duality on a finite discrete space: x -> sigma_x is a
 * homeomorphism onto the dual of the regular-closed algebra. */
struct RoundTripWitness {
  DualSpace dual;
  std::vector<unsigned> point_bijection;  // x -> index of sigma_x
  bool homeomorphism = false;
};

inline RoundTripWitness round_trip_object(const FiniteSpace& x) {
  if (!x.is_hausdorff())
    throw unsupported_error("duality round trip applies to discrete finite spaces only");
  RcAlgebra rc = rc_algebra(x);
  DualSpace d = psi_a_object(rc.lca);
  RoundTripWitness w{d, {}, true};
  if (d.points.size() != x.n()) throw std::logic_error("dual point count mismatch");
  for (unsigned p = 0; p < x.n(); ++p) {
    Cluster sigma_x;
    for (std::uint64_t m = 0; m < rc.lca.algebra.size(); ++m)
      if (rc.point_set(rc.lca.algebra.element(m)) & (Mask{1} << p)) sigma_x.members.insert(m);
    w.point_bijection.push_back(d.point_index(sigma_x));
  }
  // both spaces are discrete, so bijectivity settles the homeomorphism
  std::set<unsigned> seen(w.point_bijection.begin(), w.point_bijection.end());
  w.homeomorphism = seen.size() == x.n() && d.space.is_discrete() && x.is_discrete();
  return w;
}

}  // namespace lcaw
