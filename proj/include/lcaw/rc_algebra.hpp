#pragma once

#include <set>
#include <string>
#include <vector>

#include "contact.hpp"
#include "finite_space.hpp"

namespace lcaw {

/** The algebra of regular closed sets of a finite space.
 *
 * RC(X) is a complete atomic Boolean algebra under F \/ G = F u G with
 * complement cl(X \ F); we present it as the powerset of its minimal
 * nonzero members, keeping the concrete point set of each.  Contact is
 * point-set intersection and every member is bounded.
 */
struct RcAlgebra {
  FiniteSpace space;
  std::vector<Mask> atom_masks;  // point set of each algebra atom
  Lca lca;

  /** Point set of an algebra element. */
  Mask point_set(const EpSet& e) const {
    Mask out = 0;
    for (unsigned i = 0; i < atom_masks.size(); ++i)
      if (lca.algebra.leq(lca.algebra.atom(i), e)) out |= atom_masks[i];
    return out;
  }

  /** Algebra element of a regular closed point set. */
  EpSet element_of(Mask m) const {
    std::vector<unsigned> atoms;
    Mask covered = 0;
    for (unsigned i = 0; i < atom_masks.size(); ++i)
      if ((atom_masks[i] & ~m) == 0) {
        atoms.push_back(i);
        covered |= atom_masks[i];
      }
    if (covered != m)
      throw input_error("not a regular closed set: " + space.label(m));
    return lca.algebra.element([&] {
      std::uint64_t mk = 0;
      for (unsigned i : atoms) mk |= std::uint64_t{1} << i;
      return mk;
    }());
  }
};

inline RcAlgebra rc_algebra(const FiniteSpace& x) {
  std::vector<Mask> rc = x.regular_closed();
  std::vector<Mask> atoms;
  for (Mask m : rc) {
    if (m == 0) continue;
    bool minimal = true;
    for (Mask o : rc)
      if (o != 0 && o != m && (o & ~m) == 0) minimal = false;
    if (minimal) atoms.push_back(m);
  }
  // RC(X) is atomic: every member is the union of the atoms below it
  if (rc.size() != (std::size_t{1} << atoms.size()))
    throw std::logic_error("regular closed family is not a powerset of its atoms");
  std::vector<std::string> labels;
  for (Mask m : atoms) labels.push_back(x.label(m));
  Algebra alg = Algebra::powerset(labels);
  std::set<std::pair<unsigned, unsigned>> pairs;
  for (unsigned i = 0; i < atoms.size(); ++i)
    for (unsigned j = i + 1; j < atoms.size(); ++j)
      if (atoms[i] & atoms[j]) pairs.insert({i, j});
  ContactRelation rho = ContactRelation::atom_graph(alg, pairs);
  return RcAlgebra{x, atoms, Lca{alg, rho, Ideal::all()}};
}

/** The algebra hom dual to a continuous skeletal map:
 * phi(F) = cl(int(f^-1(F))), from RC(target) to RC(source). */
inline Hom dual_morphism(const SpaceMap& f, const RcAlgebra& rcx, const RcAlgebra& rcy) {
  MapPropertyReport props = map_properties(f);
  if (!props.get("continuous"))
    throw input_error("dual morphism needs a continuous map: " + props.witnesses.at("continuous"));
  if (!props.get("skeletal"))
    throw input_error("dual morphism needs a skeletal map: " + props.witnesses.at("skeletal"));
  std::vector<EpSet> images;
  for (Mask g : rcy.atom_masks) {
    Mask m = f.source.closure(f.source.interior(f.preimage(g)));
    images.push_back(rcx.element_of(m));
  }
  Hom phi = Hom::from_atom_images(rcy.lca.algebra, rcx.lca.algebra, images);
  std::string why;
  if (!phi.is_complete_hom(&why))
    throw std::logic_error("dual of a skeletal map failed hom laws: " + why);
  return phi;
}

/** The mutually inverse Boolean isomorphisms between RC of a space and RC
 * of a dense subspace: r(F) = F n X, e(G) = cl_Y(G). */
inline std::pair<Hom, Hom> dense_subspace_iso(const FiniteSpace& y, Mask carrier,
                                              const RcAlgebra& rcy, const RcAlgebra& rcx) {
  if (!y.is_dense(carrier))
    throw input_error("subspace " + y.label(carrier) + " is not dense");
  auto to_sub = [&](Mask m) {
    Mask rel = 0;
    unsigned k = 0;
    for (unsigned i = 0; i < y.n(); ++i)
      if (carrier & (Mask{1} << i)) {
        if (m & (Mask{1} << i)) rel |= Mask{1} << k;
        ++k;
      }
    return rel;
  };
  std::vector<EpSet> r_images;
  for (Mask g : rcy.atom_masks) r_images.push_back(rcx.element_of(to_sub(g & carrier)));
  std::vector<EpSet> e_images;
  for (Mask g : rcx.atom_masks) e_images.push_back(rcy.element_of(y.closure(y.embed(carrier, g))));
  Hom r = Hom::from_atom_images(rcy.lca.algebra, rcx.lca.algebra, std::move(r_images));
  Hom e = Hom::from_atom_images(rcx.lca.algebra, rcy.lca.algebra, std::move(e_images));
  return {r, e};
}

}  // namespace lcaw
