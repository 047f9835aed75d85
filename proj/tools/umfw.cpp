// Command-line front end: each invocation runs one job and writes exactly one
// JSON document to stdout.  Human-readable notes and timings go to stderr.
//
// Exit codes: 0 definitive verdict, 2 validation error, 3 resource cap,
// 4 internal consistency failure, 5 I/O error.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "umfw/amenability.hpp"
#include "umfw/cache.hpp"
#include "umfw/canonical.hpp"
#include "umfw/catalog.hpp"
#include "umfw/json_io.hpp"
#include "umfw/parallel.hpp"

using namespace umfw;

namespace {

int exit_code_for(const Error& e) {
  const std::string& c = e.code();
  if (c == err::ResourceCap || c == err::BoundTooLarge) return 3;
  if (c == err::CriteriaDisagree || c == err::NoSuchAtom || c == err::CorrespondenceFailed ||
      c == err::EquivalenceViolated)
    return 4;
  if (c == err::IoError) return 5;
  return 2;
}

struct SizedStructure {
  ClassDescriptor desc;
  FinStructure value;
};

FinStructure structure_of(const std::string& kind, int size) {
  ClassDescriptor d = class_by_name(kind);
  auto reps = enumerate_class_exact(d, size);
  if (reps.size() != 1)
    fail(err::InvalidDescriptor,
         "kind " + kind + " has no unique structure of size " + std::to_string(size) +
             "; pass explicit structures through --job");
  return reps.front();
}

std::string cache_dir_from(const std::string& flag) {
  if (!flag.empty()) return flag;
  const char* env = std::getenv("UMFW_CACHE_DIR");
  return env ? env : "";
}

int run_ramsey(const std::string& kind, const Json* job, int c_size, int b_size, int a_size,
               int k, const std::string& cache_dir, long budget_nodes, double budget_secs) {
  FinStructure cs, bs, as;
  if (job) {
    cs = structure_from_json(job->at("c"));
    bs = structure_from_json(job->at("b"));
    as = structure_from_json(job->at("a"));
    if (job->contains("k")) k = job->at("k").get<int>();
  } else {
    cs = structure_of(kind, c_size);
    bs = structure_of(kind, b_size);
    as = structure_of(kind, a_size);
  }
  SearchBudget budget;
  budget.node_cap = budget_nodes;
  budget.time_cap_secs = budget_secs;

  std::string key = CertificateCache::make_key(
      "ramsey.arrow", to_hex(canonical_form(as).bytes) + "|" + to_hex(canonical_form(bs).bytes) +
                          "|" + to_hex(canonical_form(cs).bytes) + "|" + std::to_string(k));
  std::string dir = cache_dir;
  if (!dir.empty()) {
    CertificateCache cache(dir);
    if (auto hit = cache.get(key)) {
      // Re-validate the embedded certificate before replaying it.
      Json j = Json::parse(*hit);
      bool ok = true;
      if (j["verdict"] == "negative") {
        Coloring col;
        col.copyset = std::make_shared<const CopySet>(enumerate_copies(as, cs));
        col.k = j["bad_coloring"]["k"].get<int>();
        col.colors = j["bad_coloring"]["colors"].get<std::vector<int>>();
        ok = int(col.colors.size()) == int(col.copyset->copies.size()) &&
             !find_monochromatic_copy(cs, bs, as, col).has_value();
      }
      if (ok) {
        std::cout << *hit;
        std::cerr << "cache: hit\n";
        return 0;
      }
      std::cerr << "cache: entry failed revalidation, recomputing\n";
    }
  }

  ArrowCertificate cert = arrow_holds(cs, bs, as, k, budget);
  if (!certificate_revalidates(cs, bs, as, cert))
    fail(err::CriteriaDisagree, "certificate failed revalidation");
  if (cert.verdict == ArrowVerdict::Positive &&
      arrow_holds(cs, bs, as, k, budget, /*reverse_branching=*/true).verdict != cert.verdict)
    fail(err::CriteriaDisagree, "positive verdict not stable under reversed branching");
  std::string payload = dump_json(certificate_to_json(cs, bs, as, cert));
  if (!dir.empty()) {
    CertificateCache cache(dir);
    cache.put(key, payload, std::to_string(cert.stats.nodes) + " nodes");
    std::cerr << "cache: miss, stored\n";
  }
  std::cout << payload;
  return 0;
}

int run_fraisse(const std::string& cls, const std::string& axiom, int bound, int a_size,
                int b_size, int workers) {
  ClassDescriptor d = class_by_name(cls);
  if (bound <= 0) bound = d.size_cap;
  Json out;
  out["class"] = cls;
  out["bound"] = bound;
  if (axiom == "hd") {
    auto rep = check_hereditary(d, bound);
    out["axiom"] = "hereditary";
    out["status"] = rep.passed ? "pass" : "fail";
    out["substructures_checked"] = rep.substructures_checked;
    if (rep.violation) {
      out["counterexample"] = {{"member", structure_to_json(rep.violation->member)},
                               {"seed", rep.violation->seed}};
    }
  } else if (axiom == "jep") {
    FinStructure a = structure_of(cls, a_size), b = structure_of(cls, b_size);
    auto c = check_jep(d, a, b, bound);
    out["axiom"] = "joint_embedding";
    out["status"] = c ? "pass" : "fail";
    if (c) out["witness"] = structure_to_json(*c);
  } else if (axiom == "ap") {
    // per-instance amalgamation: first embeddings A->B and A->C by default
    FinStructure a = structure_of(cls, a_size), b = structure_of(cls, b_size);
    FinStructure c = b;
    auto is = enumerate_embeddings(a, b);
    auto js = enumerate_embeddings(a, c);
    if (is.empty() || js.empty()) fail(err::InvalidDescriptor, "A does not embed");
    auto w = check_amalgamation(d, a, b, c, is.front(), js.front(), bound);
    out["axiom"] = "amalgamation";
    out["status"] = w ? "pass" : "fail";
    if (w) {
      out["witness"] = {{"d", structure_to_json(w->d)}, {"k", w->k.map}, {"l", w->l.map}};
    }
  } else if (axiom == "grid" || axiom == "all") {
    (void)workers;
    auto rep = fraisse_grid(d, bound);
    out["axiom"] = "grid";
    out["status"] = rep.passed ? "pass" : "fail";
    out["instances"] = rep.instances;
    if (!rep.passed) out["detail"] = rep.detail;
  } else {
    fail(err::InvalidDescriptor, "axiom must be hd, jep, ap or grid");
  }
  std::cout << dump_json(out);
  return 0;
}

int run_orders(const std::string& kind, int size, const std::string& op, int bound) {
  Json out;
  if (op == "natural") {
    if (kind == "boolalg") {
      auto list = natural_orders_boolean(make_boolalg(size));
      Json arr = Json::array();
      for (const auto& s : list) arr.push_back(order_to_json(order_of(s)));
      out["orders"] = arr;
      out["count"] = arr.size();
    } else {
      FinStructure v = structure_of(kind, size);
      auto list = natural_vs_orders_all(v);
      Json arr = Json::array();
      for (const auto& o : list) arr.push_back(order_to_json(o));
      out["orders"] = arr;
      out["count"] = arr.size();
    }
  } else if (op == "no") {
    FinStructure base = structure_of(kind, size);
    OrderClassK k = kind == "set" || kind == "linorder"
                        ? OrderClassK::all_orders(base.kind)
                        : OrderClassK::natural(base.kind);
    auto space = no_space(base, k);
    Json arr = Json::array();
    for (const auto& o : space) arr.push_back(order_to_json(o));
    out["orders"] = arr;
    out["count"] = arr.size();
  } else if (op == "forgetful") {
    OrderClassK k = kind == "set" ? OrderClassK::all_orders(StructKind::Set)
                    : kind == "graph" ? OrderClassK::all_orders(StructKind::Graph)
                    : kind == "boolalg" ? OrderClassK::natural(StructKind::BoolAlg)
                                        : OrderClassK::natural(StructKind::VecSpace);
    out = forgetfulness_to_json(check_order_forgetful(k, bound > 0 ? bound : 3));
  } else if (op == "ordering") {
    OrderClassK k = kind == "set" ? OrderClassK::all_orders(StructKind::Set)
                    : kind == "graph" ? OrderClassK::all_orders(StructKind::Graph)
                    : kind == "boolalg" ? OrderClassK::natural(StructKind::BoolAlg)
                                        : OrderClassK::natural(StructKind::VecSpace);
    FinStructure a = structure_of(kind, size);
    auto witness = check_ordering_property(k, a, bound > 0 ? bound : size + 1);
    out["status"] = witness ? "found" : "absent";
    if (witness) out["witness"] = structure_to_json(*witness);
  } else {
    fail(err::InvalidDescriptor, "op must be natural, no, forgetful or ordering");
  }
  std::cout << dump_json(out);
  return 0;
}

int run_flow(const std::string& kind, int size, const std::string& pred, bool suite) {
  Json out;
  if (suite) {
    Json rows = Json::array();
    for (const auto& entry : catalog_action_suite()) {
      auto rep = is_minimal(entry.action);
      rows.push_back({{"name", entry.name},
                      {"minimal", rep.minimal},
                      {"expected", entry.expect_minimal},
                      {"criteria_agree", true}});
    }
    out["suite"] = rows;
  } else {
    FinStructure s = structure_of(kind, size);
    OrderClassK k = pred == "all" ? OrderClassK::all_orders(s.kind) : OrderClassK::natural(s.kind);
    PermGroup g = automorphism_group(s);
    out = flow_report_to_json(minimal_flow_check_NO(s, k, g));
  }
  std::cout << dump_json(out);
  return 0;
}

int run_samuel(const std::string& group, const std::string& family_sel, const std::string& op,
               int workers) {
  CatalogGroup cg = catalog_group(group);
  const int ng = int(cg.group.order());
  auto family_of = [&](const std::string& sel) -> SubgroupFamily {
    if (sel == "discrete") {
      Bitset t(ng);
      t.set(0);
      return make_family(cg.group, {Bitset::full(ng), t});
    }
    if (sel == "top") return make_family(cg.group, {Bitset::full(ng)});
    if (sel == "all") {
      auto subs = all_subgroups(cg.group);
      return make_family(cg.group, subs);
    }
    auto families = all_valid_families(cg.group);
    size_t idx = std::stoul(sel);
    if (idx >= families.size()) fail(err::InvalidDescriptor, "family index out of range");
    return families[idx];
  };

  Json out;
  if (op == "sweep") {
    auto families = all_valid_families(cg.group);
    // materialize the shared group's lazy caches before fanning out
    cg.group.elements();
    cg.group.mul_table();
    cg.group.inverse_table();
    for (auto& fam : families) {
      fam.group.elements();
      fam.group.mul_table();
      fam.group.inverse_table();
    }
    std::vector<Json> rows(families.size());
    parallel_for(int(families.size()), workers, [&](int i) {
      rows[i] = samuel_report_to_json(samuel_check_instance(cg.group, families[i]));
    });
    Json arr = Json::array();
    bool all_ok = true;
    for (auto& r : rows) {
      all_ok = all_ok && r["all_ok"].get<bool>();
      arr.push_back(std::move(r));
    }
    out["group"] = group;
    out["families"] = arr;
    out["all_ok"] = all_ok;
  } else if (op == "check") {
    out = samuel_report_to_json(samuel_check_instance(cg.group, family_of(family_sel)));
    out["group"] = group;
  } else if (op == "embed") {
    auto rep = embed_into_sym(cg.group, family_of(family_sel));
    out["group"] = group;
    out["degree"] = rep.degree;
    out["homomorphism"] = rep.homomorphism;
    out["injective"] = rep.injective;
    out["kernel_size"] = rep.kernel_size;
    out["stabilizer_property"] = rep.stabilizer_property;
  } else {
    fail(err::InvalidDescriptor, "op must be check, sweep or embed");
  }
  std::cout << dump_json(out);
  return 0;
}

int run_amenable(const std::string& group) {
  CatalogGroup cg = catalog_group(group);
  Json out = amenability_to_json(is_extremely_amenable_finite(cg.group));
  out["group"] = group;
  std::cout << dump_json(out);
  return 0;
}

int run_catalog(const std::string& group) {
  Json out;
  Json rows = Json::array();
  for (const auto& cg : catalog_groups()) {
    if (!group.empty() && cg.name != group) continue;
    Json row;
    row["name"] = cg.name;
    row["degree"] = cg.group.degree();
    row["order"] = cg.group.order();
    row["subgroups"] = all_subgroups(cg.group).size();
    if (cg.group.order() <= 12) row["families"] = all_valid_families(cg.group).size();
    rows.push_back(row);
  }
  out["groups"] = rows;
  Json actions = Json::array();
  for (const auto& entry : catalog_action_suite()) actions.push_back(entry.name);
  out["action_suite"] = actions;
  std::cout << dump_json(out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite structural Ramsey and minimal-flow workbench"};
  app.require_subcommand(1);

  std::string kind = "set", cls = "set", axiom = "grid", op = "check", pred = "all";
  std::string group = "S3", family_sel = "discrete", cache_dir_flag, job_path;
  int c_size = 6, b_size = 3, a_size = 2, k = 2, bound = 0, size = 3, workers = 1;
  long budget_nodes = 100000000;
  double budget_secs = 600;
  bool suite = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--cache-dir", cache_dir_flag, "certificate cache directory");
    sub->add_option("--budget-nodes", budget_nodes, "search node budget");
    sub->add_option("--budget-secs", budget_secs, "wall-clock budget (informational)");
    sub->add_option("--workers", workers, "worker threads for sweeps");
    sub->add_option("--job", job_path, "job file with explicit JSON parameters");
  };

  auto* ramsey = app.add_subcommand("ramsey", "decide an arrow instance with certificate");
  ramsey->add_option("--kind", kind, "structure class name");
  ramsey->add_option("--c", c_size, "size of C");
  ramsey->add_option("--b", b_size, "size of B");
  ramsey->add_option("--a", a_size, "size of A");
  ramsey->add_option("--k", k, "number of colors");
  add_common(ramsey);

  auto* fraisse = app.add_subcommand("fraisse", "class axiom checks");
  fraisse->add_option("--class", cls, "class name");
  fraisse->add_option("--axiom", axiom, "hd | jep | grid");
  fraisse->add_option("--bound", bound, "size bound");
  fraisse->add_option("--a", a_size, "size of A (jep)");
  fraisse->add_option("--b", b_size, "size of B (jep)");
  add_common(fraisse);

  auto* orders = app.add_subcommand("orders", "order expansions and normal orderings");
  orders->add_option("--kind", kind, "base class name");
  orders->add_option("--size", size, "structure size (atoms / dimension / points)");
  orders->add_option("--op", op, "natural | no | forgetful");
  orders->add_option("--bound", bound, "bound for forgetfulness scans");
  add_common(orders);

  auto* flow = app.add_subcommand("flow", "minimality and the normal-ordering flow");
  flow->add_option("--kind", kind, "base class name");
  flow->add_option("--size", size, "structure size");
  flow->add_option("--pred", pred, "all | natural");
  flow->add_flag("--suite", suite, "run the catalog action suite");
  add_common(flow);

  auto* samuel = app.add_subcommand("samuel", "compactification instance checks");
  samuel->add_option("--group", group, "catalog group name");
  samuel->add_option("--family", family_sel, "discrete | top | all | index");
  samuel->add_option("--op", op, "check | sweep | embed");
  add_common(samuel);

  auto* amen = app.add_subcommand("amenable", "extreme-amenability criteria");
  amen->add_option("--group", group, "catalog group name");
  add_common(amen);

  auto* cat = app.add_subcommand("catalog", "list groups, families and actions");
  cat->add_option("--group", group, "filter by group name")->default_str("");
  add_common(cat);

  std::string cat_group;
  cat->callback([&] { cat_group = cat->count("--group") ? group : ""; });

  CLI11_PARSE(app, argc, argv);

  auto started = std::chrono::steady_clock::now();
  int rc = 0;
  try {
    std::optional<Json> job;
    if (!job_path.empty()) {
      std::ifstream in(job_path);
      if (!in.good()) fail(err::IoError, "cannot read job file");
      Json j;
      in >> j;
      job = j;
    }
    if (ramsey->parsed())
      rc = run_ramsey(kind, job ? &*job : nullptr, c_size, b_size, a_size, k,
                      cache_dir_from(cache_dir_flag), budget_nodes, budget_secs);
    else if (fraisse->parsed())
      rc = run_fraisse(cls, axiom, bound, a_size, b_size, workers);
    else if (orders->parsed())
      rc = run_orders(kind, size, op, bound);
    else if (flow->parsed())
      rc = run_flow(kind, size, pred, suite);
    else if (samuel->parsed())
      rc = run_samuel(group, family_sel, op == "check" && samuel->count("--op") == 0 ? "check" : op,
                      workers);
    else if (amen->parsed())
      rc = run_amenable(group);
    else if (cat->parsed())
      rc = run_catalog(cat_group);
  } catch (const Error& e) {
    std::cerr << e.code() << ": " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - started)
                     .count();
  std::cerr << "elapsed_ms: " << elapsed << "\n";
  return rc;
}
