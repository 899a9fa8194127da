#include <catch2/catch_amalgamated.hpp>

#include "lcaw/duality.hpp"

using namespace lcaw;

namespace {

Lca overlap_lca(unsigned n) {
  std::vector<std::string> labels(n);
  for (unsigned i = 0; i < n; ++i) labels[i] = std::string(1, char('p' + i));
  Algebra a = Algebra::powerset(labels);
  return Lca{a, ContactRelation::overlap(a), Ideal::all()};
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

std::vector<std::vector<unsigned>> all_functions(unsigned dom, unsigned cod) {
  std::vector<std::vector<unsigned>> out;
  std::uint64_t total = 1;
  for (unsigned i = 0; i < dom; ++i) total *= cod;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::vector<unsigned> im;
    std::uint64_t c = code;
    for (unsigned i = 0; i < dom; ++i) {
      im.push_back(static_cast<unsigned>(c % cod));
      c /= cod;
    }
    out.push_back(im);
  }
  return out;
}

}  // namespace

TEST_CASE("clusters of small contact algebras") {
  // overlap on two atoms: one cluster per atom, each the upset of its atom
  Algebra a2 = Algebra::powerset({"p", "q"});
  auto cs = clusters(a2, ContactRelation::overlap(a2));
  REQUIRE(cs.size() == 2);
  REQUIRE(cs[0].members == std::set<std::uint64_t>{0b01, 0b11});
  REQUIRE(cs[1].members == std::set<std::uint64_t>{0b10, 0b11});

  // linking the atoms merges the clusters into all nonzero elements
  auto linked = clusters(a2, ContactRelation::atom_graph(a2, {{0, 1}}));
  REQUIRE(linked.size() == 1);
  REQUIRE(linked[0].members == std::set<std::uint64_t>{0b01, 0b10, 0b11});

  // the two-element algebra has the single cluster {1}
  Algebra a1 = Algebra::powerset({"p"});
  auto one = clusters(a1, ContactRelation::overlap(a1));
  REQUIRE(one.size() == 1);
  REQUIRE(one[0].members == std::set<std::uint64_t>{0b1});
}

TEST_CASE("the atom shortcut agrees with the all-members cluster definition") {
  // sigma_u = {a : aCb for all b in the principal ultrafilter} is computed
  // as {a : aC(atom)}; additivity makes the two agree
  for (const auto& rel : all_atom_relations(3)) {
    Algebra a = Algebra::powerset({"p", "q", "r"});
    ContactRelation c = ContactRelation::atom_graph(a, rel);
    for (unsigned i = 0; i < 3; ++i) {
      Cluster fast = cluster_of_atom(a, c, i);
      std::set<std::uint64_t> slow;
      for (std::uint64_t m = 0; m < a.size(); ++m) {
        bool all = true;
        for (std::uint64_t u = 0; u < a.size(); ++u)
          if (a.leq(a.atom(i), a.element(u)) && !c.contact(a.element(m), a.element(u)))
            all = false;
        if (all) slow.insert(m);
      }
      REQUIRE(fast.members == slow);
    }
  }
}

TEST_CASE("clusters really are clusters and satisfy the kernel property") {
  for (const auto& rel : all_atom_relations(3)) {
    Algebra a = Algebra::powerset({"p", "q", "r"});
    ContactRelation c = ContactRelation::atom_graph(a, rel);
    if (!check_nca(a, c).all_passed()) continue;
    for (const Cluster& sigma : clusters(a, c)) {
      std::string why;
      REQUIRE(is_cluster(a, c, sigma.members, &why));
      // kernel property: a in sigma and b* not in sigma imply a /\ b in sigma
      for (std::uint64_t ma = 0; ma < a.size(); ++ma)
        for (std::uint64_t mb = 0; mb < a.size(); ++mb) {
          EpSet ea = a.element(ma), eb = a.element(mb);
          if (sigma.contains(ma) && !sigma.contains(a.mask_of(a.complement(eb))))
            REQUIRE(sigma.contains(a.mask_of(a.meet(ea, eb))));
        }
    }
  }
}

TEST_CASE("dual spaces of small local contact algebras") {
  DualSpace d3 = psi_a_object(overlap_lca(3));
  REQUIRE(d3.points.size() == 3);
  REQUIRE(d3.space.is_discrete());

  DualSpace d1 = psi_a_object(overlap_lca(1));
  REQUIRE(d1.points.size() == 1);

  Algebra a2 = Algebra::powerset({"p", "q"});
  Lca linked{a2, ContactRelation::atom_graph(a2, {{0, 1}}), Ideal::all()};
  REQUIRE(psi_a_object(linked).points.size() == 1);

  Algebra fc = Algebra::finite_cofinite();
  Lca symbolic{fc, ContactRelation::overlap(fc), Ideal::finite_elements()};
  REQUIRE_THROWS_AS(psi_a_object(symbolic), unsupported_error);
}

TEST_CASE("morphism conditions for duals of simple maps") {
  FiniteSpace d2 = FiniteSpace::discrete(2), d1 = FiniteSpace::discrete(1);
  RcAlgebra r2 = rc_algebra(d2), r1 = rc_algebra(d1);

  // constant 2pt -> 1pt: (IS) passes, (LS) fails at the two atoms
  Hom c = dual_morphism(SpaceMap(d2, d1, {0, 0}), r2, r1);
  ConditionReport rc = check_morphism_conditions(c, r1.lca, r2.lca);
  REQUIRE(rc.passed("IS"));
  REQUIRE(!rc.passed("LS"));
  REQUIRE(rc.find("LS")->witness.size() == 2);

  // identity: everything passes
  Hom i = dual_morphism(SpaceMap(d2, d2, {0, 1}), r2, r2);
  REQUIRE(check_morphism_conditions(i, r2.lca, r2.lca).all_passed());

  // injection 1pt -> 2pt: (LS) passes, (IS) fails at the missed point
  Hom j = dual_morphism(SpaceMap(d1, d2, {1}), r1, r2);
  ConditionReport rj = check_morphism_conditions(j, r2.lca, r1.lca);
  REQUIRE(rj.passed("LS"));
  REQUIRE(!rj.passed("IS"));
}

TEST_CASE("dual maps of simple homs") {
  FiniteSpace d2 = FiniteSpace::discrete(2), d1 = FiniteSpace::discrete(1);
  RcAlgebra r2 = rc_algebra(d2), r1 = rc_algebra(d1);

  // identity hom dualizes to the identity map
  PsiMorphism pid = psi_a_morphism(Hom::identity(r2.lca.algebra), r2.lca, r2.lca);
  REQUIRE(pid.map.image == std::vector<unsigned>{0, 1});

  // the swap dualizes to the swap of the two dual points
  Hom swap = dual_morphism(SpaceMap(d2, d2, {1, 0}), r2, r2);
  PsiMorphism ps = psi_a_morphism(swap, r2.lca, r2.lca);
  REQUIRE(ps.map.image == std::vector<unsigned>{1, 0});

  // the dual of the constant map sends both dual points to the one point
  Hom c = dual_morphism(SpaceMap(d2, d1, {0, 0}), r2, r1);
  PsiMorphism pc = psi_a_morphism(c, r1.lca, r2.lca);
  REQUIRE(pc.map.image == std::vector<unsigned>{0, 0});
}

TEST_CASE("morphism classification on discrete spaces with up to three points") {
  // surjective iff the dual satisfies (IS); injective iff it satisfies (LS);
  // and every (EL1)+(L2)+(IS) hom is injective
  for (unsigned nx = 1; nx <= 3; ++nx)
    for (unsigned ny = 1; ny <= 3; ++ny) {
      FiniteSpace x = FiniteSpace::discrete(nx), y = FiniteSpace::discrete(ny);
      RcAlgebra rx = rc_algebra(x), ry = rc_algebra(y);
      for (const auto& im : all_functions(nx, ny)) {
        SpaceMap f(x, y, im);
        Hom phi = dual_morphism(f, rx, ry);
        ConditionReport r = check_morphism_conditions(phi, ry.lca, rx.lca);
        MapPropertyReport props = map_properties(f);
        REQUIRE(r.passed("IS") == props.get("surjective"));
        REQUIRE(r.passed("LS") == props.get("injective"));
        if (r.passed("EL1") && r.passed("L2") && r.passed("IS")) REQUIRE(phi.is_injective());
      }
    }
}

TEST_CASE("boolean isomorphisms passing the LO set are duals of bijections") {
  for (unsigned nx = 1; nx <= 3; ++nx)
    for (unsigned ny = 1; ny <= 3; ++ny) {
      FiniteSpace x = FiniteSpace::discrete(nx), y = FiniteSpace::discrete(ny);
      RcAlgebra rx = rc_algebra(x), ry = rc_algebra(y);
      for (const auto& im : all_functions(nx, ny)) {
        SpaceMap f(x, y, im);
        Hom phi = dual_morphism(f, rx, ry);
        ConditionReport r = check_morphism_conditions(phi, ry.lca, rx.lca);
        bool iso_lo = r.passed("boolean_iso") && r.passed("LO");
        MapPropertyReport props = map_properties(f);
        bool bijection = props.get("injective") && props.get("surjective");
        REQUIRE(iso_lo == bijection);
      }
    }
}

TEST_CASE("dual map functoriality on discrete spaces") {
  FiniteSpace d2 = FiniteSpace::discrete(2);
  RcAlgebra r2 = rc_algebra(d2);
  for (const auto& fim : all_functions(2, 2))
    for (const auto& gim : all_functions(2, 2)) {
      SpaceMap f(d2, d2, fim), g(d2, d2, gim);
      Hom phif = dual_morphism(f, r2, r2), phig = dual_morphism(g, r2, r2);
      ConditionReport rf = check_morphism_conditions(phif, r2.lca, r2.lca);
      ConditionReport rg = check_morphism_conditions(phig, r2.lca, r2.lca);
      if (!rf.passed("EL1") || !rf.passed("L2") || !rg.passed("EL1") || !rg.passed("L2"))
        continue;
      Hom composed = Hom::compose(phif, phig);  // dual of g o f
      ConditionReport rc = check_morphism_conditions(composed, r2.lca, r2.lca);
      if (!rc.passed("EL1") || !rc.passed("L2")) continue;
      PsiMorphism pf = psi_a_morphism(phif, r2.lca, r2.lca);
      PsiMorphism pg = psi_a_morphism(phig, r2.lca, r2.lca);
      PsiMorphism pc = psi_a_morphism(composed, r2.lca, r2.lca);
      // Psi^a(phi_g o phi_f-as-composed) = Psi^a(phi_f) then Psi^a(phi_g)
      for (unsigned p = 0; p < 2; ++p)
        REQUIRE(pc.map.image[p] == pg.map.image[pf.map.image[p]]);
    }
}

TEST_CASE("embedding detection on algebra homs") {
  Lca l3 = overlap_lca(3);
  auto [ok_id, rep_id] = is_lca_embedding(Hom::identity(l3.algebra), l3, l3);
  REQUIRE(ok_id);

  // dual of the constant map: an embedding of the 1-point algebra
  FiniteSpace d2 = FiniteSpace::discrete(2), d1 = FiniteSpace::discrete(1);
  RcAlgebra r2 = rc_algebra(d2), r1 = rc_algebra(d1);
  Hom c = dual_morphism(SpaceMap(d2, d1, {0, 0}), r2, r1);
  auto [ok_c, rep_c] = is_lca_embedding(c, r1.lca, r2.lca);
  REQUIRE(ok_c);
  // and the constant map itself is a quasi-open semi-open perfect surjection
  MapPropertyReport props = map_properties(SpaceMap(d2, d1, {0, 0}));
  REQUIRE(props.get("quasi_open"));
  REQUIRE(props.get("semi_open"));
  REQUIRE(props.get("perfect"));
  REQUIRE(props.get("surjective"));

  // the natural epimorphism P(3) -> P(2) is not injective, hence no embedding
  auto [b, epi] = relative_algebra(l3.algebra, l3.algebra.element(0b011));
  Lca lb{b, ContactRelation::overlap(b), Ideal::all()};
  auto [ok_epi, rep_epi] = is_lca_embedding(epi, l3, lb);
  REQUIRE(!ok_epi);
  REQUIRE(!rep_epi.passed("injective"));
}

TEST_CASE("factorization of skeletal embeddings") {
  // a closed embedding: factor f1 is a bijection onto the closed image
  FiniteSpace si = FiniteSpace::from_opens({"a", "b"}, {0b01});
  FiniteSpace pt = FiniteSpace::discrete(std::vector<std::string>{"b"});
  // {b} is closed in the Sierpinski space; not skeletal though, so use
  // discrete ambient instead for the closed case
  FiniteSpace d2 = FiniteSpace::discrete(2);
  EmbeddingFactorization closed = factor_embedding(SpaceMap(FiniteSpace::discrete(1), d2, {1}));
  REQUIRE(closed.report.all_passed());
  REQUIRE(closed.f1.target.n() == 1);  // image already closed: f1 bijective

  // a dense embedding: the middle space is everything, f2 the identity
  EmbeddingFactorization dense =
      factor_embedding(SpaceMap(FiniteSpace::discrete(std::vector<std::string>{"a"}), si, {0}));
  REQUIRE(dense.report.all_passed());
  REQUIRE(dense.f2.source.n() == si.n());
  REQUIRE(dense.report.passed("phi1_boolean_iso"));
  REQUIRE(dense.report.passed("phi1_LO"));
  REQUIRE(dense.report.passed("phi2_LS"));
  (void)pt;
}

TEST_CASE("object round trip on discrete spaces") {
  for (unsigned n = 1; n <= 5; ++n) {
    RoundTripWitness w = round_trip_object(FiniteSpace::discrete(n));
    REQUIRE(w.homeomorphism);
    REQUIRE(w.point_bijection.size() == n);
  }
  FiniteSpace si = FiniteSpace::from_opens({"a", "b"}, {0b01});
  REQUIRE_THROWS_AS(round_trip_object(si), unsupported_error);
}

TEST_CASE("algebra round trip: the dual of the dual space is the algebra") {
  for (unsigned n = 1; n <= 4; ++n) {
    Lca l = overlap_lca(n);
    DualSpace d = psi_a_object(l);
    RcAlgebra rc = rc_algebra(d.space);
    // same size, same contact structure under the atom correspondence
    REQUIRE(rc.lca.algebra.size() == l.algebra.size());
    REQUIRE(d.space.is_discrete());
    for (std::uint64_t ma = 0; ma < l.algebra.size(); ++ma)
      for (std::uint64_t mb = 0; mb < l.algebra.size(); ++mb)
        REQUIRE(l.rho.contact(l.algebra.element(ma), l.algebra.element(mb)) ==
                rc.lca.rho.contact(rc.lca.algebra.element(ma), rc.lca.algebra.element(mb)));
  }
}
