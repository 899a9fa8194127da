#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "lcaw/extension.hpp"

using namespace lcaw;

namespace {

Lca overlap_lca(unsigned n) {
  std::vector<std::string> labels(n);
  for (unsigned i = 0; i < n; ++i) labels[i] = std::string(1, char('p' + i));
  Algebra a = Algebra::powerset(labels);
  return Lca{a, ContactRelation::overlap(a), Ideal::all()};
}

Lca finite_cofinite_lca() {
  Algebra a = Algebra::finite_cofinite();
  return Lca{a, ContactRelation::overlap(a), Ideal::finite_elements()};
}

Lca ult_periodic_lca(unsigned m) {
  Algebra a = Algebra::ult_periodic(m);
  return Lca{a, ContactRelation::overlap(a), Ideal::finite_elements()};
}

std::vector<std::set<std::pair<unsigned, unsigned>>> all_atom_relations(unsigned n) {
  std::vector<std::pair<unsigned, unsigned>> slots;
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = i; j < n; ++j) slots.push_back({i, j});
  std::vector<std::set<std::pair<unsigned, unsigned>>> out;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << slots.size()); ++code) {
    std::set<std::pair<unsigned, unsigned>> rel;
    for (unsigned s = 0; s < slots.size(); ++s)
      if (code & (std::uint64_t{1} << s)) rel.insert(slots[s]);
    out.push_back(rel);
  }
  return out;
}

/** Oracle (i): the greatest relation inside way-inside that interpolates
 * through itself; apartness in the largest-compactification relation is
 * reachability of the complement in this fixpoint. */
bool gfp_apart(const Lca& l, std::uint64_t ma, std::uint64_t mb) {
  const Algebra& alg = l.algebra;
  std::uint64_t n = alg.size();
  std::vector<std::vector<char>> r(n, std::vector<char>(n));
  for (std::uint64_t a = 0; a < n; ++a)
    for (std::uint64_t b = 0; b < n; ++b)
      r[a][b] = l.way_inside(alg.element(a), alg.element(b));
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::uint64_t a = 0; a < n; ++a)
      for (std::uint64_t b = 0; b < n; ++b) {
        if (!r[a][b]) continue;
        bool mid = false;
        for (std::uint64_t c = 0; c < n && !mid; ++c)
          if (r[a][c] && r[c][b]) mid = true;
        if (!mid) {
          r[a][b] = 0;
          changed = true;
        }
      }
  }
  return r[ma][alg.mask_of(alg.complement(alg.element(mb)))];
}

/** Oracle (ii): an explicit way-inside chain of length equal to the algebra
 * size from a to the complement of b. */
bool chain_apart(const Lca& l, std::uint64_t ma, std::uint64_t mb) {
  const Algebra& alg = l.algebra;
  std::uint64_t n = alg.size();
  std::uint64_t target = alg.mask_of(alg.complement(alg.element(mb)));
  std::vector<char> layer(n);
  for (std::uint64_t c = 0; c < n; ++c)
    layer[c] = l.way_inside(alg.element(ma), alg.element(c));
  for (std::uint64_t step = 0; step + 1 < n; ++step) {
    std::vector<char> next(n);
    for (std::uint64_t c = 0; c < n; ++c) {
      if (!layer[c]) continue;
      for (std::uint64_t d = 0; d < n; ++d)
        if (l.way_inside(alg.element(c), alg.element(d))) next[d] = 1;
    }
    layer = next;
  }
  for (std::uint64_t c = 0; c < n; ++c)
    if (layer[c] && l.way_inside(alg.element(c), alg.element(target))) return true;
  return false;
}

/** Truncation oracle on an initial segment: a set has infinitely many
 * members in a residue class iff some member of the class appears in a
 * window long past every threshold in play. */
bool infinite_in_class(const EpSet& s, unsigned r, unsigned m, unsigned bound) {
  for (unsigned n = bound - 48; n < bound; ++n)
    if (s.contains(n) && n % m == r) return true;
  return false;
}

EpSet random_ep(std::mt19937& rng) {
  std::uniform_int_distribution<unsigned> pick_mod(1, 8);
  std::bernoulli_distribution bit(0.4);
  unsigned m = pick_mod(rng);
  std::vector<unsigned> pre, res;
  for (unsigned n = 0; n < 10; ++n)
    if (bit(rng)) pre.push_back(n);
  for (unsigned r = 0; r < m; ++r)
    if (bit(rng)) res.push_back(r);
  return EpSet::from_parts(pre, 10, res, m);
}

EpSet random_fc(std::mt19937& rng) {
  std::bernoulli_distribution bit(0.4);
  std::vector<unsigned> ms;
  for (unsigned n = 0; n < 12; ++n)
    if (bit(rng)) ms.push_back(n);
  EpSet s = EpSet::finite(ms);
  return bit(rng) ? EpSet::naturals().diff(s) : s;
}

}  // namespace

TEST_CASE("admissibility of compactification relations") {
  // the one-point relation is always admissible
  REQUIRE(is_admissible_ncr(overlap_lca(3), c_rho(overlap_lca(3))).all_passed());
  REQUIRE(is_admissible_ncr(finite_cofinite_lca(), c_rho(finite_cofinite_lca())).all_passed());

  // a fully bounded universe admits only rho itself: RC1 and RC2 squeeze
  for (unsigned n : {2u, 3u}) {
    std::vector<std::string> labels(n);
    for (unsigned i = 0; i < n; ++i) labels[i] = std::string(1, char('p' + i));
    Algebra a = Algebra::powerset(labels);
    Lca l{a, ContactRelation::overlap(a), Ideal::all()};
    for (const auto& rel : all_atom_relations(n)) {
      ContactRelation c = ContactRelation::atom_graph(a, rel);
      if (is_admissible_ncr(l, c).all_passed()) REQUIRE(relations_equal_on(a, c, l.rho));
    }
    REQUIRE(is_admissible_ncr(l, l.rho).all_passed());
  }

  // the two-end relation over the periodic algebra
  Lca lup = ult_periodic_lca(2);
  REQUIRE(is_admissible_ncr(lup, partition_ends(lup.algebra, 2)).all_passed());
}

TEST_CASE("largest compactification relation on symbolic algebras") {
  // discrete symbolic case: the relation is rho itself
  Lca fc = finite_cofinite_lca();
  ContactRelation beta = beta_ncr(fc);
  std::mt19937 rng(23);
  for (int k = 0; k < 220; ++k) {
    EpSet a = random_fc(rng), b = random_fc(rng);
    REQUIRE(beta.contact(a, b) == fc.rho.contact(a, b));
  }
  // no closed form is claimed beyond overlap
  Algebra up = Algebra::ult_periodic(2);
  Lca pp{up, partition_ends(up, 2), Ideal::finite_elements()};
  REQUIRE_THROWS_AS(beta_ncr(pp), unsupported_error);
}

TEST_CASE("largest compactification relation matches both oracles") {
  // on every contact algebra over <= 3 atoms the pigeonhole form, the
  // fixpoint closure, and the bounded-depth chain search coincide
  Algebra a = Algebra::powerset({"p", "q", "r"});
  for (const auto& rel : all_atom_relations(3)) {
    ContactRelation c = ContactRelation::atom_graph(a, rel);
    if (!check_nca(a, c).all_passed()) continue;
    Lca l{a, c, Ideal::all()};
    ContactRelation beta = beta_ncr(l);
    for (std::uint64_t ma = 0; ma < a.size(); ++ma)
      for (std::uint64_t mb = 0; mb < a.size(); ++mb) {
        bool apart = !beta.contact(a.element(ma), a.element(mb));
        REQUIRE(apart == gfp_apart(l, ma, mb));
        REQUIRE(apart == chain_apart(l, ma, mb));
      }
  }
}

TEST_CASE("largest relation collapses to rho on fully bounded algebras") {
  for (const auto& rel : all_atom_relations(3)) {
    Algebra a = Algebra::powerset({"p", "q", "r"});
    Lca l{a, ContactRelation::atom_graph(a, rel), Ideal::all()};
    if (!check_lca(l).all_passed()) continue;
    REQUIRE(relations_equal_on(a, beta_ncr(l), l.rho));
  }
  // the completely-separated reading on discrete regular-closed algebras:
  // apart exactly when disjoint
  for (unsigned n = 1; n <= 4; ++n) {
    Lca l = rc_algebra(FiniteSpace::discrete(n)).lca;
    ContactRelation beta = beta_ncr(l);
    const Algebra& alg = l.algebra;
    for (std::uint64_t ma = 0; ma < alg.size(); ++ma)
      for (std::uint64_t mb = 0; mb < alg.size(); ++mb)
        REQUIRE(beta.contact(alg.element(ma), alg.element(mb)) ==
                alg.element(ma).intersects(alg.element(mb)));
  }
  // two-atom sanity: the atoms are pulled apart through a reflexive middle
  Lca l2 = overlap_lca(2);
  REQUIRE(!beta_ncr(l2).contact(l2.algebra.atom(0), l2.algebra.atom(1)));
}

TEST_CASE("supremum of compactification relations") {
  // idempotence on the finite universe
  Lca l3 = overlap_lca(3);
  REQUIRE(relations_equal_on(l3.algebra, sup_ncr(l3, {l3.rho}), l3.rho));
  REQUIRE(relations_equal_on(l3.algebra, sup_ncr(l3, {c_rho(l3), l3.rho}), l3.rho));
  // inadmissible members are refused
  Algebra a2 = Algebra::powerset({"p", "q"});
  Lca l2 = overlap_lca(2);
  REQUIRE_THROWS_AS(sup_ncr(l2, {ContactRelation::atom_graph(a2, {{0, 1}})}), input_error);
}

TEST_CASE("supremum of the two- and three-end relations is the six-end one") {
  Lca l = ult_periodic_lca(6);
  const Algebra& a = l.algebra;
  ContactRelation c2 = partition_ends(a, 2), c3 = partition_ends(a, 3);
  ContactRelation sup = sup_ncr(l, {c2, c3});
  REQUIRE(sup.kernel().kind() == "partition");

  // truncation oracle over the first 300 naturals
  std::mt19937 rng(31);
  std::vector<EpSet> pool;
  for (unsigned r = 0; r < 6; ++r) pool.push_back(EpSet::residue_class(r, 6));
  for (int k = 0; k < 200; ++k) pool.push_back(random_ep(rng));
  for (size_t i = 0; i < pool.size(); ++i)
    for (size_t j = 0; j < pool.size(); j += 3) {
      const EpSet& x = pool[i];
      const EpSet& y = pool[j];
      bool shared_end = false;
      for (unsigned r = 0; r < 6; ++r)
        if (infinite_in_class(x, r, 6, 300) && infinite_in_class(y, r, 6, 300))
          shared_end = true;
      REQUIRE(sup.contact(x, y) == (x.intersects(y) || shared_end));
    }

  // least upper bound within the divisor family {1,2,3,6}
  for (unsigned m : {1u, 2u, 3u, 6u}) {
    ContactRelation cm = m == 1 ? c_rho(l) : partition_ends(a, m);
    bool upper_of_2 = compare_ncr(a, c2, cm).verdict == OrderVerdict::less ||
                      compare_ncr(a, c2, cm).verdict == OrderVerdict::equal;
    bool upper_of_3 = compare_ncr(a, c3, cm).verdict == OrderVerdict::less ||
                      compare_ncr(a, c3, cm).verdict == OrderVerdict::equal;
    bool above_sup = compare_ncr(a, sup, cm).verdict == OrderVerdict::less ||
                     compare_ncr(a, sup, cm).verdict == OrderVerdict::equal;
    REQUIRE((upper_of_2 && upper_of_3) == above_sup);
  }
}

TEST_CASE("comparison in the compactification order") {
  Lca l = ult_periodic_lca(6);
  const Algebra& a = l.algebra;

  // the one-point relation is smallest
  for (unsigned m : {2u, 3u, 6u}) {
    CompareResult r = compare_ncr(a, c_rho(l), partition_ends(a, m));
    REQUIRE(r.verdict == OrderVerdict::less);
    REQUIRE(!r.only_in_first.empty());
  }
  REQUIRE(compare_ncr(a, partition_ends(a, 2), partition_ends(a, 2)).verdict ==
          OrderVerdict::equal);

  // two against three ends: incomparable with cross witnesses
  CompareResult r = compare_ncr(a, partition_ends(a, 2), partition_ends(a, 3));
  REQUIRE(r.verdict == OrderVerdict::incomparable);
  REQUIRE(!r.only_in_first.empty());
  REQUIRE(!r.only_in_second.empty());

  // divisibility reproduces the order on the partition family
  for (unsigned m1 : {2u, 3u, 6u})
    for (unsigned m2 : {2u, 3u, 6u}) {
      OrderVerdict v = compare_ncr(a, partition_ends(a, m1), partition_ends(a, m2)).verdict;
      if (m1 == m2) REQUIRE(v == OrderVerdict::equal);
      else if (m2 % m1 == 0) REQUIRE(v == OrderVerdict::less);
      else if (m1 % m2 == 0) REQUIRE(v == OrderVerdict::greater);
      else REQUIRE(v == OrderVerdict::incomparable);
    }
}

TEST_CASE("the finite compactification lattice is a singleton") {
  // all admissible relations over a fully bounded 3-atom universe collapse
  // to rho, so every subset trivially has a supremum and infimum
  Lca l = overlap_lca(3);
  std::vector<ContactRelation> ka;
  for (const auto& rel : all_atom_relations(3)) {
    ContactRelation c = ContactRelation::atom_graph(l.algebra, rel);
    if (is_admissible_ncr(l, c).all_passed()) ka.push_back(c);
  }
  REQUIRE(!ka.empty());
  for (const auto& c : ka) REQUIRE(relations_equal_on(l.algebra, c, l.rho));
  REQUIRE(relations_equal_on(l.algebra, sup_ncr(l, ka), l.rho));
  REQUIRE(relations_equal_on(l.algebra, beta_ncr(l), l.rho));
}

TEST_CASE("membership and order in the extension set") {
  Lca base = overlap_lca(3);
  REQUIRE(lca_extension_membership(base, base).all_passed());
  ConditionReport self = lca_extension_order(base, base, base);
  REQUIRE(self.passed("preceq"));
  REQUIRE(self.passed("preceq_s"));

  // a fully bounded base pins every member to the base itself
  for (const auto& rel : all_atom_relations(3)) {
    ContactRelation c = ContactRelation::atom_graph(base.algebra, rel);
    Lca cand{base.algebra, c, Ideal::all()};
    if (lca_extension_membership(base, cand).all_passed())
      REQUIRE(relations_equal_on(base.algebra, c, base.rho));
  }

  // over the discrete symbolic base: the one-point extension sits above
  Lca fc = finite_cofinite_lca();
  Lca one_point{fc.algebra, c_rho(fc), Ideal::all()};
  REQUIRE(lca_extension_membership(fc, one_point).all_passed());
  ConditionReport ord = lca_extension_order(fc, one_point, fc);
  REQUIRE(ord.passed("preceq"));
  REQUIRE(!ord.passed("preceq_s"));  // the free ultrafilter is never met
  Lca shrunk{fc.algebra, fc.rho, Ideal::principal(fc.algebra.zero())};
  REQUIRE(!lca_extension_membership(fc, shrunk).passed("LA2"));
  REQUIRE_THROWS_AS(lca_extension_order(fc, fc, shrunk), input_error);
}

TEST_CASE("local proximity space validation and restriction") {
  // two discrete points
  LocalProximitySpace d2 = LocalProximitySpace::discrete({"a", "b"});
  REQUIRE(d2.validate().all_passed());
  RestrictedProximity r2 = restrict_local_proximity(d2);
  REQUIRE(r2.topo.is_discrete());
  REQUIRE(r2.report.all_passed());
  REQUIRE(r2.lca.algebra.size() == 4);

  // a singleton
  LocalProximitySpace d1 = LocalProximitySpace::discrete({"a"});
  REQUIRE(d1.validate().all_passed());
  REQUIRE(restrict_local_proximity(d1).report.all_passed());

  // pulling a and b together: non-separated, non-discrete topology, but the
  // restriction to the regular closed algebra is still admissible
  std::set<Mask> all_bounded;
  for (Mask m = 0; m < 8; ++m) all_bounded.insert(m);
  LocalProximitySpace glued =
      LocalProximitySpace::from_point_pairs({"a", "b", "c"}, {{0, 1}}, all_bounded);
  REQUIRE(!glued.separated());
  REQUIRE(!glued.induced_topology().is_discrete());
  RestrictedProximity rg = restrict_local_proximity(glued);
  REQUIRE(!rg.report.passed("separated"));
  REQUIRE(rg.report.passed("A1"));
  REQUIRE(rg.report.passed("A2"));
  for (const char* name : {"C1", "C2", "C3", "C4", "BC1", "BC2", "BC3"})
    REQUIRE(rg.report.passed(name));
}

TEST_CASE("proximity round trips on up to three points") {
  std::vector<std::string> names = {"a", "b", "c"};
  for (unsigned n = 1; n <= 3; ++n) {
    std::vector<std::string> pts(names.begin(), names.begin() + n);
    std::vector<std::pair<unsigned, unsigned>> slots;
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = i + 1; j < n; ++j) slots.push_back({i, j});
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << slots.size()); ++code) {
      std::set<std::pair<unsigned, unsigned>> pp;
      for (unsigned s = 0; s < slots.size(); ++s)
        if (code & (std::uint64_t{1} << s)) pp.insert(slots[s]);
      for (Mask g = 0; g < (Mask{1} << n); ++g) {
        std::set<Mask> bnd;
        for (Mask m = 0; m <= g; ++m)
          if ((m & ~g) == 0) bnd.insert(m);
        LocalProximitySpace p = LocalProximitySpace::from_point_pairs(pts, pp, bnd);
        ConditionReport v = p.validate();
        bool valid = true;
        for (const char* name : {"C1", "C2", "C3", "C4", "ideal", "BC1", "BC2", "BC3"})
          if (!v.passed(name)) valid = false;
        if (!valid) continue;
        RestrictedProximity q = restrict_local_proximity(p);
        bool admissible = q.report.passed("A1") && q.report.passed("A2");
        for (const char* name : {"C1", "C2", "C3", "C4", "BC1", "BC2", "BC3"})
          if (!q.report.passed(name)) admissible = false;
        if (!admissible) continue;

        // reconstruct, then restrict again: the regular-closed side returns
        LocalProximitySpace p2 = reconstruct_local_proximity(q);
        RestrictedProximity q2 = restrict_local_proximity(p2);
        REQUIRE(q2.topo.opens() == q.topo.opens());
        REQUIRE(q2.lca.algebra.size() == q.lca.algebra.size());
        for (std::uint64_t ma = 0; ma < q.lca.algebra.size(); ++ma) {
          REQUIRE(q2.lca.is_bounded(q2.lca.algebra.element(ma)) ==
                  q.lca.is_bounded(q.lca.algebra.element(ma)));
          for (std::uint64_t mb = 0; mb < q.lca.algebra.size(); ++mb)
            REQUIRE(q2.lca.rho.contact(q2.lca.algebra.element(ma), q2.lca.algebra.element(mb)) ==
                    q.lca.rho.contact(q.lca.algebra.element(ma), q.lca.algebra.element(mb)));
        }

        // separated spaces come back identically
        if (p.separated()) {
          REQUIRE(p2.rel == p.rel);
          REQUIRE(p2.bounded == p.bounded);
        }
      }
    }
  }
}

TEST_CASE("wallman-type criterion") {
  Lca l = overlap_lca(2);
  const Algebra& a = l.algebra;
  ContactRelation c = beta_ncr(l);

  // the whole algebra is always a witness family
  std::vector<EpSet> whole;
  for (std::uint64_t m = 0; m < a.size(); ++m) whole.push_back(a.element(m));
  REQUIRE(wallman_check(l, c, whole).all_passed());

  // {0,1} cannot interpolate an atom inside itself
  ConditionReport small = wallman_check(l, c, {a.zero(), a.one()});
  REQUIRE(small.passed("meet_closed"));
  REQUIRE(small.passed("clause1"));
  REQUIRE(!small.passed("clause2"));
  REQUIRE(!small.find("clause2")->witness.empty());

  // a family missing its meets is reported structurally
  ConditionReport open_family = wallman_check(l, c, {a.atom(0), a.atom(1)});
  REQUIRE(!open_family.passed("meet_closed"));
}

TEST_CASE("dense-embedding proximity") {
  // the identity on a discrete space induces plain overlap
  FiniteSpace d3 = FiniteSpace::discrete(3);
  ContactRelation id3 = njastad_delta({"a", "b", "c"}, d3, {0, 1, 2});
  REQUIRE(relations_equal_on(Algebra::powerset({"a", "b", "c"}), id3,
                             ContactRelation::overlap(Algebra::powerset({"a", "b", "c"}))));

  // the open point of the Sierpinski space is dense
  FiniteSpace si = FiniteSpace::from_opens({"x", "y"}, {0b01});
  ContactRelation one = njastad_delta({"a"}, si, {0});
  Algebra a1 = Algebra::powerset({"a"});
  REQUIRE(one.contact(a1.atom(0), a1.atom(0)));
  REQUIRE_THROWS_AS(njastad_delta({"a"}, si, {1}), input_error);  // closed point not dense

  // two points dense in a three-point space with a shared limit point
  FiniteSpace tri = FiniteSpace::from_opens({"u", "v", "w"}, {0b001, 0b010, 0b011});
  ContactRelation two = njastad_delta({"a", "b"}, tri, {0, 1});
  Algebra a2 = Algebra::powerset({"a", "b"});
  REQUIRE(two.contact(a2.atom(0), a2.atom(1)));  // closures meet at the limit point
  REQUIRE_THROWS_AS(njastad_delta({"a", "b"}, tri, {0, 0}), input_error);  // not injective
}
