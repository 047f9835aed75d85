#include "umfw/json_io.hpp"

#include <sstream>

#include "umfw/canonical.hpp"

namespace umfw {

namespace {

std::string row_to_hex(uint64_t row, int n) {
  int digits = (n + 3) / 4;
  static const char* hexd = "0123456789abcdef";
  std::string out(digits, '0');
  for (int i = 0; i < digits; ++i) out[digits - 1 - i] = hexd[(row >> (4 * i)) & 15];
  return out;
}

uint64_t hex_to_row(const std::string& s) {
  uint64_t v = 0;
  for (char c : s) {
    v <<= 4;
    if (c >= '0' && c <= '9') v |= uint64_t(c - '0');
    else if (c >= 'a' && c <= 'f') v |= uint64_t(c - 'a' + 10);
    else fail(err::InvalidDescriptor, "bad hex digit in adjacency row");
  }
  return v;
}

}  // namespace

Json structure_to_json(const FinStructure& s) {
  Json j;
  j["kind"] = kind_name(s.kind);
  Json params;
  params["n"] = s.n;
  if (kind_is_boolalg(s.kind)) params["m"] = s.atoms;
  if (kind_is_vecspace(s.kind)) {
    params["d"] = s.dim;
    params["p"] = s.p;
  }
  j["params"] = params;
  Json rel = Json::object();
  if (kind_is_graph(s.kind)) {
    std::vector<std::string> rows;
    for (int u = 0; u < s.n; ++u) rows.push_back(row_to_hex(s.adj[u], s.n));
    rel["adjacency"] = rows;
  }
  if (kind_is_ordered(s.kind)) rel["order"] = s.order;
  j["relations"] = rel;
  j["canonical"] = to_hex(canonical_form(s).bytes);
  return j;
}

FinStructure structure_from_json(const Json& j) {
  StructKind kind = kind_from_name(j.at("kind").get<std::string>());
  const Json& params = j.at("params");
  const Json rel = j.value("relations", Json::object());
  std::vector<int> order;
  if (rel.contains("order")) order = rel.at("order").get<std::vector<int>>();
  auto edges_of = [&](int n) {
    std::vector<std::pair<int, int>> edges;
    if (!rel.contains("adjacency")) return edges;
    auto rows = rel.at("adjacency").get<std::vector<std::string>>();
    for (int u = 0; u < n && u < int(rows.size()); ++u) {
      uint64_t row = hex_to_row(rows[u]);
      for (int v = u + 1; v < n; ++v)
        if ((row >> v) & 1) edges.push_back({u, v});
    }
    return edges;
  };
  switch (kind) {
    case StructKind::Set: return make_set(params.at("n").get<int>());
    case StructKind::LinOrder: {
      int n = params.at("n").get<int>();
      if (order.empty()) return make_linorder(n);
      return with_order(make_set(n), order);
    }
    case StructKind::Graph: {
      int n = params.at("n").get<int>();
      return make_graph(n, edges_of(n));
    }
    case StructKind::OrderedGraph: {
      int n = params.at("n").get<int>();
      return make_ordered_graph(n, edges_of(n), order);
    }
    case StructKind::BoolAlg: return make_boolalg(params.at("m").get<int>());
    case StructKind::OrderedBoolAlg: return make_ordered_boolalg(params.at("m").get<int>(), order);
    case StructKind::VecSpace: return make_vecspace(params.at("d").get<int>(), params.at("p").get<int>());
    case StructKind::OrderedVecSpace:
      return make_ordered_vecspace(params.at("d").get<int>(), params.at("p").get<int>(), order);
  }
  fail(err::InvalidDescriptor, "unknown kind");
}

Json order_to_json(const LinearOrder& o) { return Json(o.rank); }

Json coloring_to_json(const Coloring& c) {
  Json j;
  j["k"] = c.k;
  j["colors"] = c.colors;
  Json copies = Json::array();
  for (const auto& cp : c.copyset->copies) copies.push_back(cp);
  j["copies"] = copies;
  return j;
}

Json certificate_to_json(const FinStructure& c, const FinStructure& b, const FinStructure& a,
                         const ArrowCertificate& cert) {
  Json j;
  j["instance"] = {{"a", to_hex(canonical_form(a).bytes)},
                   {"b", to_hex(canonical_form(b).bytes)},
                   {"c", to_hex(canonical_form(c).bytes)},
                   {"k", cert.k}};
  j["verdict"] = cert.verdict == ArrowVerdict::Positive ? "positive" : "negative";
  if (cert.bad_coloring) j["bad_coloring"] = coloring_to_json(*cert.bad_coloring);
  j["stats"] = {{"nodes", cert.stats.nodes},
                {"symmetry_reductions", cert.stats.symmetry_reductions}};
  j["complete"] = cert.complete;
  return j;
}

Json minimality_to_json(const MinimalityReport& r) {
  Json j;
  j["minimal"] = r.minimal;
  j["criteria"] = {{"orbit", r.orbit_criterion},
                   {"covering", r.covering_criterion},
                   {"syndetic", r.syndetic_criterion}};
  j["subsets_checked"] = r.subsets_checked;
  return j;
}

Json flow_report_to_json(const FlowReport& r) {
  Json j;
  j["density_surrogate"] = r.density_surrogate;
  j["minimality"] = minimality_to_json(r.minimality);
  j["bounds_hold"] = r.bounds_hold;
  j["rows_checked"] = r.rows_checked;
  j["no_points"] = r.no_points;
  Json v = Json::array();
  for (const auto& row : r.violations) {
    v.push_back({{"universe", row.universe},
                 {"window_chain", row.window_chain},
                 {"ret_size", row.ret_size},
                 {"bound", row.bound},
                 {"coset_index", row.coset_index}});
  }
  j["violations"] = v;
  return j;
}

Json amenability_to_json(const AmenabilityReport& r) {
  Json j;
  j["verdict"] = r.verdict;
  j["umf_size"] = r.umf_size;
  j["condition_b_i"] = r.condition_b_i;
  if (r.b_i_witness) j["b_i_witness"] = *r.b_i_witness;
  j["condition_c_preserved_order"] = r.condition_c_has_order;
  if (r.preserved_order) j["preserved_order"] = order_to_json(*r.preserved_order);
  j["b_ii_instances"] = r.b_ii_instances;
  j["b_ii_consistent"] = r.b_ii_consistent;
  j["criteria_agree"] = r.criteria_agree;
  j["note"] = "finite reading: only the trivial group has a singleton universal minimal flow";
  return j;
}

Json samuel_report_to_json(const SamuelInstanceReport& r) {
  Json j;
  j["group_order"] = r.group_order;
  j["family_size"] = r.family_size;
  j["l_atoms"] = r.l_atoms;
  j["l_boolean_closed"] = r.l_boolean_closed;
  j["l_left_invariant"] = r.l_left_invariant;
  j["stone_action_ok"] = r.stone_action_ok;
  j["mul_matches_quotient"] = r.mul_matches_quotient;
  j["mul_associative"] = r.mul_associative;
  j["right_translations_ok"] = r.right_translations_ok;
  j["num_minimal_ideals"] = r.num_minimal_ideals;
  j["ideals_ok"] = r.ideals_ok;
  j["maxsynd_is_l"] = r.maxsynd_is_l;
  j["theorem_flow_iso"] = r.theorem_flow_iso;
  j["ret_correspondence"] = r.ret_correspondence;
  j["embed"] = {{"degree", r.embed.degree},
                {"homomorphism", r.embed.homomorphism},
                {"injective", r.embed.injective},
                {"kernel_size", r.embed.kernel_size},
                {"kernel_is_intersection", r.embed.kernel_is_intersection},
                {"stabilizer_property", r.embed.stabilizer_property},
                {"separating_family", r.embed.separating_family}};
  j["all_ok"] = r.all_ok();
  return j;
}

Json forgetfulness_to_json(const ForgetfulnessReport& r) {
  Json j;
  j["forgetful"] = r.forgetful;
  j["pairs_checked"] = r.pairs_checked;
  if (r.counterexample) {
    j["counterexample"] = {structure_to_json(r.counterexample->first),
                           structure_to_json(r.counterexample->second)};
  }
  return j;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace umfw
