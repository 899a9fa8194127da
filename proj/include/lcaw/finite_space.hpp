#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "report.hpp"

namespace lcaw {

using Mask = std::uint32_t;

/** A finite topological space; point subsets are bitmasks over the point list. */
class FiniteSpace {
public:
  static FiniteSpace discrete(const std::vector<std::string>& points) {
    std::vector<Mask> opens;
    for (Mask m = 0; m < (Mask{1} << points.size()); ++m) opens.push_back(m);
    return FiniteSpace(points, opens);
  }

  static FiniteSpace discrete(unsigned n) { return discrete(default_labels(n)); }

  static FiniteSpace from_opens(const std::vector<std::string>& points, std::set<Mask> opens) {
    opens.insert(0);
    opens.insert(full(points.size()));
    std::vector<Mask> v(opens.begin(), opens.end());
    FiniteSpace x(points, v);
    std::string why;
    if (!x.is_topology(&why)) throw input_error("not a topology: " + why);
    return x;
  }

  static std::vector<std::string> default_labels(unsigned n) {
    std::vector<std::string> out;
    for (unsigned i = 0; i < n; ++i) out.push_back(std::string(1, char('a' + i)));
    return out;
  }

  unsigned n() const { return static_cast<unsigned>(points_.size()); }
  Mask full_mask() const { return full(n()); }
  const std::vector<std::string>& points() const { return points_; }
  const std::vector<Mask>& opens() const { return opens_; }

  bool is_open(Mask m) const { return std::binary_search(opens_.begin(), opens_.end(), m); }
  bool is_closed(Mask m) const { return is_open(full_mask() & ~m); }

  Mask interior(Mask m) const {
    Mask out = 0;
    for (Mask u : opens_)
      if ((u & ~m) == 0) out |= u;
    return out;
  }

  Mask closure(Mask m) const { return full_mask() & ~interior(full_mask() & ~m); }

  bool is_dense(Mask m) const { return closure(m) == full_mask(); }

  bool is_discrete() const { return opens_.size() == (std::size_t{1} << n()); }

  /** Regular closed sets: fixed points of cl(int(.)). */
  std::vector<Mask> regular_closed() const {
    std::set<Mask> rc;
    for (Mask m = 0; m <= full_mask(); ++m) rc.insert(closure(interior(m)));
    return {rc.begin(), rc.end()};
  }

  /** Subspace on a point subset; keeps the relative point order. */
  FiniteSpace subspace(Mask carrier, std::vector<unsigned>* point_map = nullptr) const {
    std::vector<std::string> pts;
    std::vector<unsigned> idx;
    for (unsigned i = 0; i < n(); ++i)
      if (carrier & (Mask{1} << i)) {
        idx.push_back(i);
        pts.push_back(points_[i]);
      }
    std::set<Mask> subopens;
    for (Mask u : opens_) {
      Mask rel = 0;
      for (unsigned k = 0; k < idx.size(); ++k)
        if (u & (Mask{1} << idx[k])) rel |= Mask{1} << k;
      subopens.insert(rel);
    }
    if (point_map) *point_map = idx;
    std::vector<Mask> v(subopens.begin(), subopens.end());
    return FiniteSpace(pts, v);
  }

  /** Embed a subspace mask (relative to `carrier`) back into this space. */
  Mask embed(Mask carrier, Mask rel) const {
    Mask out = 0;
    unsigned k = 0;
    for (unsigned i = 0; i < n(); ++i)
      if (carrier & (Mask{1} << i)) {
        if (rel & (Mask{1} << k)) out |= Mask{1} << i;
        ++k;
      }
    return out;
  }

  bool is_topology(std::string* why = nullptr) const {
    for (Mask u : opens_)
      for (Mask v : opens_) {
        if (!is_open(u | v)) {
          if (why) *why = "union of opens " + label(u) + ", " + label(v) + " not open";
          return false;
        }
        if (!is_open(u & v)) {
          if (why) *why = "intersection of opens " + label(u) + ", " + label(v) + " not open";
          return false;
        }
      }
    return true;
  }

  /** T2 for finite spaces collapses to discreteness. */
  bool is_hausdorff() const { return is_discrete(); }

  std::string label(Mask m) const {
    std::string out = "{";
    bool first = true;
    for (unsigned i = 0; i < n(); ++i)
      if (m & (Mask{1} << i)) {
        if (!first) out += ",";
        out += points_[i];
        first = false;
      }
    return out + "}";
  }

  /** Specialization preorder: x <= y iff x lies in the closure of {y}. */
  std::vector<std::pair<unsigned, unsigned>> specialization_pairs() const {
    std::vector<std::pair<unsigned, unsigned>> out;
    for (unsigned x = 0; x < n(); ++x)
      for (unsigned y = 0; y < n(); ++y)
        if (x != y && (closure(Mask{1} << y) & (Mask{1} << x))) out.push_back({x, y});
    return out;
  }

  bool operator==(const FiniteSpace& o) const {
    return points_ == o.points_ && opens_ == o.opens_;
  }

private:
  FiniteSpace(std::vector<std::string> pts, std::vector<Mask> opens)
      : points_(std::move(pts)), opens_(std::move(opens)) {
    std::sort(opens_.begin(), opens_.end());
    opens_.erase(std::unique(opens_.begin(), opens_.end()), opens_.end());
  }

  static Mask full(std::size_t k) { return static_cast<Mask>((std::uint64_t{1} << k) - 1); }

  std::vector<std::string> points_;
  std::vector<Mask> opens_;  // sorted, deduplicated
};

/** All topologies on n labelled points (n small). */
inline std::vector<FiniteSpace> enumerate_topologies(unsigned n) {
  std::vector<FiniteSpace> out;
  auto labels = FiniteSpace::default_labels(n);
  Mask fullm = static_cast<Mask>((std::uint64_t{1} << n) - 1);
  std::vector<Mask> proper;
  for (Mask m = 1; m < fullm; ++m) proper.push_back(m);
  std::uint64_t families = std::uint64_t{1} << proper.size();
  for (std::uint64_t f = 0; f < families; ++f) {
    std::set<Mask> opens{0, fullm};
    for (unsigned i = 0; i < proper.size(); ++i)
      if (f & (std::uint64_t{1} << i)) opens.insert(proper[i]);
    bool ok = true;
    for (Mask u : opens) {
      for (Mask v : opens)
        if (!opens.count(u | v) || !opens.count(u & v)) {
          ok = false;
          break;
        }
      if (!ok) break;
    }
    if (ok) out.push_back(FiniteSpace::from_opens(labels, opens));
  }
  return out;
}

/** A total function between finite spaces. */
struct SpaceMap {
  FiniteSpace source;
  FiniteSpace target;
  std::vector<unsigned> image;  // image[i] = index of f(point i)

  SpaceMap(FiniteSpace s, FiniteSpace t, std::vector<unsigned> im)
      : source(std::move(s)), target(std::move(t)), image(std::move(im)) {
    if (image.size() != source.n()) throw input_error("space map: one image per point expected");
    for (unsigned i : image)
      if (i >= target.n()) throw input_error("space map: image point out of range");
  }

  Mask forward(Mask m) const {
    Mask out = 0;
    for (unsigned i = 0; i < source.n(); ++i)
      if (m & (Mask{1} << i)) out |= Mask{1} << image[i];
    return out;
  }

  Mask preimage(Mask m) const {
    Mask out = 0;
    for (unsigned i = 0; i < source.n(); ++i)
      if (m & (Mask{1} << image[i])) out |= Mask{1} << i;
    return out;
  }

  Mask range() const { return forward(source.full_mask()); }

  static SpaceMap compose(const SpaceMap& g, const SpaceMap& f) {
    std::vector<unsigned> im;
    for (unsigned i = 0; i < f.source.n(); ++i) im.push_back(g.image[f.image[i]]);
    return SpaceMap(f.source, g.target, im);
  }
};

/** Topological predicates of a map, each with a witness when it fails. */
struct MapPropertyReport {
  std::map<std::string, bool> flags;
  std::map<std::string, std::string> witnesses;

  bool get(const std::string& name) const { return flags.at(name); }
};

inline MapPropertyReport map_properties(const SpaceMap& f) {
  MapPropertyReport r;
  const FiniteSpace& X = f.source;
  const FiniteSpace& Y = f.target;
  auto set = [&](const std::string& name, bool ok, const std::string& wit) {
    r.flags[name] = ok;
    if (!ok) r.witnesses[name] = wit;
  };

  bool cont = true;
  std::string wit;
  for (Mask v : Y.opens())
    if (!X.is_open(f.preimage(v))) {
      cont = false;
      wit = "open " + Y.label(v) + " has non-open preimage";
      break;
    }
  set("continuous", cont, wit);

  bool open = true;
  wit.clear();
  for (Mask u : X.opens())
    if (!Y.is_open(f.forward(u))) {
      open = false;
      wit = "open " + X.label(u) + " has non-open image";
      break;
    }
  set("open", open, wit);

  bool closed = true;
  wit.clear();
  for (Mask u = 0; u <= X.full_mask(); ++u)
    if (X.is_closed(u) && !Y.is_closed(f.forward(u))) {
      closed = false;
      wit = "closed " + X.label(u) + " has non-closed image";
      break;
    }
  set("closed", closed, wit);

  // finite fibers are automatic, so perfect = continuous and closed
  set("perfect", cont && closed, cont && closed ? "" : "not continuous and closed");

  bool skel = true;
  wit.clear();
  for (Mask v : Y.opens())
    if (Y.is_dense(v) && !X.is_dense(f.preimage(v))) {
      skel = false;
      wit = "dense open " + Y.label(v) + " has non-dense preimage";
      break;
    }
  set("skeletal", skel, wit);

  bool qopen = true;
  wit.clear();
  for (Mask u : X.opens())
    if (u != 0 && Y.interior(f.forward(u)) == 0) {
      qopen = false;
      wit = "open " + X.label(u) + " has image with empty interior";
      break;
    }
  set("quasi_open", qopen, wit);

  // semi-open: every image point has a fiber point at which interiors map
  // into interiors of images, taken in the subspace f(X)
  bool semi = true;
  wit.clear();
  Mask range = f.range();
  FiniteSpace fx = Y.subspace(range);
  auto to_sub = [&](Mask m) {
    Mask rel = 0;
    unsigned k = 0;
    for (unsigned i = 0; i < Y.n(); ++i)
      if (range & (Mask{1} << i)) {
        if (m & (Mask{1} << i)) rel |= Mask{1} << k;
        ++k;
      }
    return rel;
  };
  for (unsigned y = 0; y < Y.n(); ++y) {
    if (!(range & (Mask{1} << y))) continue;
    bool good_fiber_point = false;
    for (unsigned x = 0; x < X.n(); ++x) {
      if (f.image[x] != y) continue;
      bool good = true;
      for (Mask u = 0; u <= X.full_mask() && good; ++u)
        if (X.interior(u) & (Mask{1} << x))
          if (!(fx.interior(to_sub(f.forward(u))) & to_sub(Mask{1} << y))) good = false;
      if (good) {
        good_fiber_point = true;
        break;
      }
    }
    if (!good_fiber_point) {
      semi = false;
      wit = "image point " + Y.points()[y] + " has no interior-preserving fiber point";
      break;
    }
  }
  set("semi_open", semi, wit);

  bool inj = true;
  wit.clear();
  for (unsigned i = 0; i < X.n() && inj; ++i)
    for (unsigned j = i + 1; j < X.n(); ++j)
      if (f.image[i] == f.image[j]) {
        inj = false;
        wit = X.points()[i] + " and " + X.points()[j] + " collide";
        break;
      }
  set("injective", inj, wit);

  bool surj = f.range() == Y.full_mask();
  set("surjective", surj, surj ? "" : "point " + Y.label(Y.full_mask() & ~f.range()) + " missed");

  bool dense = Y.is_dense(f.range());
  set("dense_image", dense, dense ? "" : "closure of image is " + Y.label(Y.closure(f.range())));

  // homeomorphic embedding: injective, continuous, and open onto the image subspace
  bool emb = inj && cont;
  wit = emb ? "" : "not an injective continuous map";
  if (emb) {
    for (Mask u : X.opens())
      if (!fx.is_open(to_sub(f.forward(u)))) {
        emb = false;
        wit = "open " + X.label(u) + " not open in the image subspace";
        break;
      }
  }
  set("homeo_embedding", emb, wit);

  return r;
}

}  // namespace lcaw
