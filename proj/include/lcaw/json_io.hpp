#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "duality.hpp"
#include "extension.hpp"
#include "ideal_frames.hpp"

namespace lcaw {

using Json = nlohmann::ordered_json;

// --- parsing ---

inline Algebra parse_algebra(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    throw input_error("algebra descriptor needs a \"kind\" string");
  std::string kind = j.at("kind");
  if (kind == "powerset") {
    if (!j.contains("atoms") || !j.at("atoms").is_array())
      throw input_error("powerset descriptor needs an \"atoms\" array");
    std::vector<std::string> atoms;
    for (const auto& a : j.at("atoms")) {
      if (!a.is_string()) throw input_error("atom names must be strings");
      atoms.push_back(a.get<std::string>());
    }
    return Algebra::powerset(atoms);
  }
  if (kind == "finite_cofinite") return Algebra::finite_cofinite();
  if (kind == "ult_periodic") {
    if (!j.contains("modulus") || !j.at("modulus").is_number_unsigned() ||
        j.at("modulus").get<unsigned>() == 0)
      throw input_error("ult_periodic descriptor needs a positive \"modulus\"");
    return Algebra::ult_periodic(j.at("modulus").get<unsigned>());
  }
  throw input_error("unknown algebra kind: " + kind);
}

inline EpSet parse_element(const Json& j, const Algebra& alg) {
  if (!j.is_object()) throw input_error("element descriptor must be an object");
  auto naturals = [&](const Json& arr, const char* what) {
    if (!arr.is_array()) throw input_error(std::string(what) + " must be an array");
    std::vector<unsigned> out;
    for (const auto& v : arr) {
      if (!v.is_number_unsigned()) throw input_error(std::string(what) + " must hold naturals");
      out.push_back(v.get<unsigned>());
    }
    return out;
  };
  EpSet e;
  if (j.contains("atoms")) {
    std::vector<unsigned> positions;
    for (const auto& a : j.at("atoms")) {
      if (!a.is_string()) throw input_error("element \"atoms\" must hold atom names");
      auto idx = alg.atom_index_by_label(a.get<std::string>());
      if (!idx) throw input_error("unknown atom name: " + a.get<std::string>());
      positions.push_back(alg.atom_positions()[*idx]);
    }
    e = EpSet::finite(positions);
  } else if (j.contains("finite")) {
    e = EpSet::finite(naturals(j.at("finite"), "\"finite\""));
  } else if (j.contains("cofinite_except")) {
    e = EpSet::cofinite_except(naturals(j.at("cofinite_except"), "\"cofinite_except\""));
  } else if (j.contains("residues")) {
    if (!j.contains("modulus") || !j.at("modulus").is_number_unsigned() ||
        j.at("modulus").get<unsigned>() == 0)
      throw input_error("periodic element needs a positive \"modulus\"");
    std::vector<unsigned> prefix =
        j.contains("prefix") ? naturals(j.at("prefix"), "\"prefix\"") : std::vector<unsigned>{};
    unsigned t = j.contains("threshold") ? j.at("threshold").get<unsigned>() : 0u;
    e = EpSet::from_parts(prefix, t, naturals(j.at("residues"), "\"residues\""),
                          j.at("modulus").get<unsigned>());
  } else {
    throw input_error("element descriptor not recognized");
  }
  if (!alg.contains(e)) throw input_error("element is outside the algebra: " + e.to_string());
  return e;
}

inline Ideal parse_ideal(const Json& j, const Algebra& alg) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    throw input_error("bounded descriptor needs a \"kind\" string");
  std::string kind = j.at("kind");
  if (kind == "all") return Ideal::all();
  if (kind == "finite") return Ideal::finite_elements();
  if (kind == "principal") {
    if (!j.contains("top")) throw input_error("principal ideal needs a \"top\" element");
    return Ideal::principal(parse_element(j.at("top"), alg));
  }
  if (kind == "list") {
    if (!j.contains("elements") || !j.at("elements").is_array())
      throw input_error("list ideal needs an \"elements\" array");
    std::vector<EpSet> gens;
    for (const auto& e : j.at("elements")) gens.push_back(parse_element(e, alg));
    return Ideal::generated(alg, gens);
  }
  throw input_error("unknown ideal kind: " + kind);
}

inline ContactRelation parse_contact(const Json& j, const Algebra& alg) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    throw input_error("contact descriptor needs a \"kind\" string");
  std::string kind = j.at("kind");
  if (kind == "overlap") return ContactRelation::overlap(alg);
  if (kind == "atom_graph") {
    if (!j.contains("pairs") || !j.at("pairs").is_array())
      throw input_error("atom_graph descriptor needs a \"pairs\" array");
    std::set<std::pair<unsigned, unsigned>> pairs;
    for (const auto& p : j.at("pairs")) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string())
        throw input_error("atom_graph pairs must be [name, name] arrays");
      auto i = alg.atom_index_by_label(p[0].get<std::string>());
      auto k = alg.atom_index_by_label(p[1].get<std::string>());
      if (!i || !k) throw input_error("unknown atom in contact pair");
      pairs.insert({*i, *k});
    }
    return ContactRelation::atom_graph(alg, pairs);
  }
  if (kind == "partition") {
    if (!j.contains("modulus") || !j.at("modulus").is_number_unsigned() ||
        j.at("modulus").get<unsigned>() == 0)
      throw input_error("partition descriptor needs a positive \"modulus\"");
    return partition_ends(alg, j.at("modulus").get<unsigned>());
  }
  if (kind == "explicit") {
    if (!j.contains("pairs") || !j.at("pairs").is_array())
      throw input_error("explicit descriptor needs a \"pairs\" array");
    std::vector<std::pair<EpSet, EpSet>> table;
    for (const auto& p : j.at("pairs")) {
      if (!p.is_array() || p.size() != 2)
        throw input_error("explicit pairs must be [element, element] arrays");
      table.push_back({parse_element(p[0], alg), parse_element(p[1], alg)});
    }
    return ContactRelation::explicit_table(alg, table);
  }
  throw input_error("unknown contact kind: " + kind);
}

inline Lca parse_lca(const Json& j) {
  if (!j.is_object() || !j.contains("algebra"))
    throw input_error("lca descriptor needs an \"algebra\"");
  Algebra alg = parse_algebra(j.at("algebra"));
  if (!j.contains("contact")) throw input_error("lca descriptor needs a \"contact\"");
  ContactRelation rho = parse_contact(j.at("contact"), alg);
  Ideal bounded = j.contains("bounded") ? parse_ideal(j.at("bounded"), alg) : Ideal::all();
  return Lca{alg, rho, bounded};
}

/** Derived relation descriptors over a parsed LCA: c_rho and beta live on
 * top of the base relation. */
inline ContactRelation parse_relation_over(const Json& j, const Lca& l) {
  if (j.is_object() && j.contains("kind") && j.at("kind").is_string()) {
    std::string kind = j.at("kind");
    if (kind == "c_rho") return c_rho(l);
    if (kind == "beta") return beta_ncr(l);
  }
  return parse_contact(j, l.algebra);
}

inline FiniteSpace parse_space(const Json& j) {
  if (!j.is_object() || !j.contains("points") || !j.at("points").is_array())
    throw input_error("space descriptor needs a \"points\" array");
  std::vector<std::string> points;
  for (const auto& p : j.at("points")) {
    if (!p.is_string()) throw input_error("point names must be strings");
    points.push_back(p.get<std::string>());
  }
  auto index_of = [&](const std::string& name) {
    for (unsigned i = 0; i < points.size(); ++i)
      if (points[i] == name) return i;
    throw input_error("unknown point name: " + name);
  };
  if (!j.contains("opens")) return FiniteSpace::discrete(points);
  std::set<Mask> opens;
  for (const auto& u : j.at("opens")) {
    if (!u.is_array()) throw input_error("each open set must be an array of point names");
    Mask m = 0;
    for (const auto& p : u) {
      if (!p.is_string()) throw input_error("point names must be strings");
      m |= Mask{1} << index_of(p.get<std::string>());
    }
    opens.insert(m);
  }
  return FiniteSpace::from_opens(points, opens);
}

inline SpaceMap parse_map(const Json& j, const FiniteSpace& src, const FiniteSpace& dst) {
  if (!j.is_object() || !j.contains("images") || !j.at("images").is_object())
    throw input_error("map descriptor needs an \"images\" object");
  std::vector<unsigned> image(src.n());
  std::vector<bool> seen(src.n(), false);
  for (const auto& [from, to] : j.at("images").items()) {
    if (!to.is_string()) throw input_error("image names must be strings");
    unsigned i = src.n(), k = dst.n();
    for (unsigned x = 0; x < src.n(); ++x)
      if (src.points()[x] == from) i = x;
    for (unsigned y = 0; y < dst.n(); ++y)
      if (dst.points()[y] == to.get<std::string>()) k = y;
    if (i == src.n()) throw input_error("unknown source point: " + from);
    if (k == dst.n()) throw input_error("unknown target point: " + to.get<std::string>());
    image[i] = k;
    seen[i] = true;
  }
  for (unsigned x = 0; x < src.n(); ++x)
    if (!seen[x]) throw input_error("missing image for point " + src.points()[x]);
  return SpaceMap(src, dst, image);
}

// --- serialization ---

inline Json element_json(const Algebra& alg, const EpSet& e) {
  Json j;
  if (alg.kind() == AlgebraKind::powerset) {
    Json atoms = Json::array();
    for (unsigned i = 0; i < alg.atom_count(); ++i)
      if (alg.leq(alg.atom(i), e)) atoms.push_back(alg.atom_labels()[i]);
    j["atoms"] = atoms;
  } else if (e.is_finite()) {
    j["finite"] = e.finite_members();
  } else if (e.is_cofinite()) {
    j["cofinite_except"] = EpSet::naturals().diff(e).finite_members();
  } else {
    std::vector<unsigned> prefix, residues;
    for (unsigned n = 0; n < e.threshold(); ++n)
      if (e.contains(n)) prefix.push_back(n);
    for (unsigned r = 0; r < e.modulus(); ++r)
      if (e.residue_bits()[r]) residues.push_back(r);
    j["prefix"] = prefix;
    j["threshold"] = e.threshold();
    j["residues"] = residues;
    j["modulus"] = e.modulus();
  }
  return j;
}

inline Json report_json(const ConditionReport& r) {
  Json conditions = Json::array();
  for (const auto& c : r.results) {
    Json jc;
    jc["name"] = c.name;
    jc["passed"] = c.passed;
    jc["provenance"] = to_string(c.provenance);
    jc["witness"] = c.witness;
    if (!c.note.empty()) jc["note"] = c.note;
    conditions.push_back(jc);
  }
  return conditions;
}

inline Json verdict_json(const ConditionReport& r, double elapsed_ms) {
  Json j;
  j["status"] = r.all_passed() ? "holds" : "fails";
  Json witnesses = Json::array();
  for (const auto& c : r.results)
    if (!c.passed && !c.witness.empty()) witnesses.push_back(c.witness);
  j["witnesses"] = witnesses;
  j["timing_ms"] = elapsed_ms;
  j["conditions"] = report_json(r);
  return j;
}

inline Json error_json(const std::string& message) {
  Json j;
  j["status"] = "error";
  j["message"] = message;
  return j;
}

inline Json space_json(const FiniteSpace& x) {
  Json j;
  j["points"] = x.points();
  Json opens = Json::array();
  for (Mask u : x.opens()) {
    Json names = Json::array();
    for (unsigned i = 0; i < x.n(); ++i)
      if (u & (Mask{1} << i)) names.push_back(x.points()[i]);
    opens.push_back(names);
  }
  j["opens"] = opens;
  return j;
}

inline Json map_json(const SpaceMap& f) {
  Json images = Json::object();
  for (unsigned i = 0; i < f.source.n(); ++i)
    images[f.source.points()[i]] = f.target.points()[f.image[i]];
  Json j;
  j["images"] = images;
  return j;
}

inline Json contact_table_json(const Algebra& alg, const ContactRelation& c) {
  Json pairs = Json::array();
  for (std::uint64_t ma = 0; ma < alg.size(); ++ma)
    for (std::uint64_t mb = 0; mb < alg.size(); ++mb)
      if (c.contact(alg.element(ma), alg.element(mb)))
        pairs.push_back(Json::array(
            {element_json(alg, alg.element(ma)), element_json(alg, alg.element(mb))}));
  Json j;
  j["kind"] = c.kernel().kind();
  j["pairs"] = pairs;
  return j;
}

// --- DOT export ---

/** Specialization digraph of a finite space: an arrow x -> y when x lies
 * in the closure of {y}. */
inline std::string dot_specialization(const FiniteSpace& x, const std::string& name = "dual") {
  std::string out = "digraph \"" + name + "\" {\n";
  for (unsigned i = 0; i < x.n(); ++i) out += "  \"" + x.points()[i] + "\";\n";
  for (auto [a, b] : x.specialization_pairs())
    out += "  \"" + x.points()[a] + "\" -> \"" + x.points()[b] + "\";\n";
  out += "}\n";
  return out;
}

/** Hasse diagram of a finite order given by a reflexive comparison. */
inline std::string dot_hasse(const std::vector<std::string>& names,
                             const std::vector<std::vector<bool>>& leq,
                             const std::string& name = "order") {
  std::string out = "graph \"" + name + "\" {\n  rankdir=BT;\n";
  for (const auto& n : names) out += "  \"" + n + "\";\n";
  for (unsigned i = 0; i < names.size(); ++i)
    for (unsigned j = 0; j < names.size(); ++j) {
      if (i == j || !leq[i][j] || leq[j][i]) continue;
      bool covered = true;  // no strictly intermediate element
      for (unsigned k = 0; k < names.size(); ++k)
        if (k != i && k != j && leq[i][k] && !leq[k][i] && leq[k][j] && !leq[j][k]) covered = false;
      if (covered) out += "  \"" + names[i] + "\" -- \"" + names[j] + "\";\n";
    }
  out += "}\n";
  return out;
}

}  // namespace lcaw
