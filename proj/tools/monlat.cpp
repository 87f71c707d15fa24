// monlat: lattices of normal submonoids and congruences of finite monoids,
// given by Cayley tables. Reports are JSON by default; --format text gives a
// human rendering and --format dot emits Hasse diagrams for the lattice
// commands. Output is byte-identical for a fixed command line and seed.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <monlat/monlat.hpp>

namespace {

using monlat::json;

struct GlobalOptions {
  std::string format = "json";
  bool allow_large = false;
  int norsub_bound = monlat::defaults::norsub_enum_bound;
  int cong_bound = monlat::defaults::cong_enum_bound;
  int iso_bound = monlat::defaults::iso_bound;
  int builder_bound = monlat::defaults::norsub_enum_bound;
  unsigned threads = 2;
  std::uint64_t seed = 1;

  void apply_allow_large() {
    if (!allow_large) return;
    norsub_bound = std::max(norsub_bound, monlat::defaults::large_enum_bound);
    cong_bound = std::max(cong_bound, monlat::defaults::large_enum_bound);
    builder_bound = std::max(builder_bound, monlat::defaults::large_enum_bound);
  }
};

void add_global_flags(CLI::App* cmd, GlobalOptions& opts) {
  cmd->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"json", "text", "dot"}))
      ->capture_default_str();
  cmd->add_flag("--allow-large", opts.allow_large,
                "Raise enumeration bounds to cover T_5 scale inputs (can run for minutes)");
  cmd->add_option("--enum-bound", opts.norsub_bound,
                  "Normal submonoid enumeration bound")
      ->envname("MONLAT_ENUM_BOUND")
      ->capture_default_str();
  cmd->add_option("--cong-bound", opts.cong_bound, "Congruence enumeration bound")
      ->envname("MONLAT_CONG_BOUND")
      ->capture_default_str();
  cmd->add_option("--iso-bound", opts.iso_bound, "Isomorphism search bound")
      ->envname("MONLAT_ISO_BOUND")
      ->capture_default_str();
  cmd->add_option("--threads", opts.threads, "Worker threads for closure enumeration")
      ->envname("MONLAT_THREADS")
      ->capture_default_str();
  cmd->add_option("--seed", opts.seed, "Seed for randomized subcommands")
      ->capture_default_str();
}

// Monoid sources: a builder name with parameters, or a JSON file.
//   tn N | cyclic M R | nmax N | file PATH
monlat::FiniteMonoid load_monoid(std::vector<std::string> const& source,
                                 GlobalOptions const& opts) {
  if (source.empty()) monlat::raise("BadParameters", "missing monoid source");
  std::string kind = source[0];
  auto need = [&](std::size_t n) {
    if (source.size() != n + 1)
      monlat::raise("BadParameters", "source '" + kind + "' takes " + std::to_string(n) +
                                         " parameter(s)");
  };
  if (kind == "tn") {
    need(1);
    return monlat::full_transformation_monoid(std::stoi(source[1]), opts.builder_bound).monoid;
  }
  if (kind == "cyclic") {
    need(2);
    return monlat::cyclic_monoid(std::stoi(source[1]), std::stoi(source[2]), opts.builder_bound);
  }
  if (kind == "nmax") {
    need(1);
    int top = std::stoi(source[1]);
    if (top + 1 > opts.builder_bound)
      monlat::raise("BoundExceeded", "nmax size exceeds the builder bound");
    return monlat::nmax_truncated(top);
  }
  if (kind == "file") {
    need(1);
    std::ifstream in(source[1]);
    if (!in) monlat::raise("BadParameters", "cannot open file " + source[1]);
    json j;
    in >> j;
    return monlat::monoid_from_json(j);
  }
  monlat::raise("BadParameters", "unknown monoid source '" + kind +
                                     "' (expected tn, cyclic, nmax or file)");
}

monlat::ElementSet parse_subset(std::string const& text) {
  std::string trimmed = text;
  if (!trimmed.empty() && trimmed.front() == '[') return monlat::element_set_from_json(json::parse(trimmed));
  std::vector<int> members;
  std::stringstream ss(trimmed);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) members.push_back(std::stoi(tok));
  return monlat::ElementSet::from_unsorted(std::move(members));
}

std::string label_for_set(monlat::FiniteMonoid const& m, monlat::ElementSet const& s) {
  if (s.size() > 8) return "#" + std::to_string(s.size());
  std::string out = "{";
  bool first = true;
  for (int x : s) {
    if (!first) out += ",";
    out += m.label(x);
    first = false;
  }
  return out + "}";
}

void emit(json const& report, GlobalOptions const& opts,
          std::string const& text_rendering = "") {
  if (opts.format == "text" && !text_rendering.empty())
    std::cout << text_rendering;
  else
    std::cout << report.dump(2) << "\n";
}

// ---- subcommand payloads --------------------------------------------------

int run_build(std::vector<std::string> const& source, GlobalOptions& opts) {
  auto m = load_monoid(source, opts);
  std::cout << monlat::monoid_to_json(m).dump(2) << "\n";
  return 0;
}

int run_norsub(std::vector<std::string> const& source, GlobalOptions& opts) {
  auto m = load_monoid(source, opts);
  auto family = monlat::enumerate_normal_submonoids(m, opts.norsub_bound, opts.threads);
  auto lat = monlat::build_lattice(std::move(family),
                                   [](monlat::ElementSet const& a, monlat::ElementSet const& b) {
                                     return a.subset_of(b);
                                   });
  (void)lat.top();
  (void)lat.bottom();
  auto verdict = monlat::is_modular(lat);

  if (opts.format == "dot") {
    std::cout << monlat::to_dot(lat, [&](monlat::ElementSet const& s) {
      return label_for_set(m, s);
    });
    return 0;
  }

  json report;
  report["size"] = m.size();
  report["norsub"] = monlat::lattice_to_json(
      lat, [](monlat::ElementSet const& s) { return monlat::element_set_to_json(s); });
  report["count"] = lat.size();
  report["is_chain"] = monlat::is_chain(lat);
  report["is_modular"] = verdict.modular;
  if (verdict.witness)
    report["modularity_witness"] = {(*verdict.witness)[0], (*verdict.witness)[1],
                                    (*verdict.witness)[2]};

  std::string text = "NorSub lattice with " + std::to_string(lat.size()) + " node(s)\n";
  for (int i = 0; i < lat.size(); ++i)
    text += "  " + std::to_string(i) + ": " + label_for_set(m, lat.node(i)) + "\n";
  text += std::string("chain: ") + (monlat::is_chain(lat) ? "yes" : "no") +
          ", modular: " + (verdict.modular ? "yes" : "no") + "\n";
  emit(report, opts, text);
  return 0;
}

int run_cong(std::vector<std::string> const& source, GlobalOptions& opts) {
  auto m = load_monoid(source, opts);
  auto congs = monlat::enumerate_congruences(m, opts.cong_bound);
  auto lat = monlat::build_lattice(congs,
                                   [](monlat::Congruence const& a, monlat::Congruence const& b) {
                                     return a.refines(b);
                                   });
  (void)lat.top();
  (void)lat.bottom();
  auto verdict = monlat::is_modular(lat);

  if (opts.format == "dot") {
    std::cout << monlat::to_dot(lat, [](monlat::Congruence const& r) {
      return std::to_string(r.num_classes()) + " classes";
    });
    return 0;
  }

  json entries = json::array();
  for (auto const& r : congs) {
    auto cls = monlat::classify_congruence(m, r);
    entries.push_back(
        json{{"classes", monlat::congruence_to_json(r)},
             {"num_classes", r.num_classes()},
             {"kind", cls.kind == monlat::CongruenceKind::normal ? "normal" : "exceptional"},
             {"unital", monlat::is_unital(m, r)},
             {"identity_class", monlat::element_set_to_json(cls.anchor)}});
  }
  json report;
  report["size"] = m.size();
  report["count"] = int(congs.size());
  report["congruences"] = std::move(entries);
  report["lattice"] = monlat::lattice_to_json(lat, [](monlat::Congruence const& r) {
    return monlat::congruence_to_json(r);
  });
  report["is_chain"] = monlat::is_chain(lat);
  report["is_modular"] = verdict.modular;

  std::string text = "Cong lattice with " + std::to_string(congs.size()) + " congruence(s)\n";
  for (std::size_t i = 0; i < congs.size(); ++i) {
    auto cls = monlat::classify_congruence(m, congs[i]);
    text += "  " + std::to_string(i) + ": classes=" + std::to_string(congs[i].num_classes()) +
            ", " + (cls.kind == monlat::CongruenceKind::normal ? "normal" : "exceptional") +
            (monlat::is_unital(m, congs[i]) ? ", unital" : "") + "\n";
  }
  text += std::string("chain: ") + (monlat::is_chain(lat) ? "yes" : "no") + "\n";
  emit(report, opts, text);
  return 0;
}

int run_blowup(std::vector<std::string> const& source, GlobalOptions& opts) {
  auto m = load_monoid(source, opts);
  auto rep = monlat::verify_blowup(m, opts.cong_bound, opts.norsub_bound, opts.threads);
  json j = monlat::blowup_report_to_json(rep);
  std::string text = "blow-up check: |Cong(M)| = " + std::to_string(rep.total_congruences) +
                     ", sum over fibers = " + std::to_string(rep.fiber_sum) + " -> " +
                     (rep.pass ? "PASS" : "FAIL") + "\n";
  for (auto const& f : rep.fibers)
    text += "  fiber " + label_for_set(m, f.submonoid) + ": " +
            std::to_string(f.fiber_size) + " congruence(s)\n";
  emit(j, opts, text);
  return rep.pass ? 0 : 1;
}

int run_check(std::vector<std::string> const& source, GlobalOptions& opts, bool normal,
              bool normally_simple, bool congruentially_simple, bool modular) {
  auto m = load_monoid(source, opts);
  if (!normal && !normally_simple && !congruentially_simple && !modular)
    normal = normally_simple = congruentially_simple = modular = true;
  json report;
  std::string text;
  if (normal) {
    bool v = monlat::is_normal_monoid(m);
    report["normal"] = v;
    text += std::string("normal: ") + (v ? "yes" : "no") + "\n";
  }
  if (normally_simple) {
    bool v = monlat::is_normally_simple(m, opts.norsub_bound,
                                        monlat::defaults::unit_group_bound, opts.threads);
    report["normally_simple"] = v;
    text += std::string("normally simple: ") + (v ? "yes" : "no") + "\n";
  }
  if (congruentially_simple) {
    bool v = monlat::is_congruentially_simple(m, opts.cong_bound, opts.norsub_bound,
                                              opts.threads);
    report["congruentially_simple"] = v;
    text += std::string("congruentially simple: ") + (v ? "yes" : "no") + "\n";
  }
  if (modular) {
    auto lat = monlat::build_lattice(
        monlat::enumerate_normal_submonoids(m, opts.norsub_bound, opts.threads),
        [](monlat::ElementSet const& a, monlat::ElementSet const& b) { return a.subset_of(b); });
    bool v = monlat::is_modular(lat).modular;
    report["modular"] = v;
    text += std::string("modular NorSub lattice: ") + (v ? "yes" : "no") + "\n";
  }
  emit(report, opts, text);
  return 0;
}

int run_quotient(std::vector<std::string> const& source, GlobalOptions& opts,
                 std::string const& by) {
  auto m = load_monoid(source, opts);
  auto subset = parse_subset(by);
  auto r = monlat::induced_congruence(m, subset);
  auto q = monlat::quotient(m, r);
  json report;
  report["monoid"] = monlat::monoid_to_json(q.monoid);
  report["projection"] = q.projection.map;
  report["identity_class"] = monlat::element_set_to_json(monlat::identity_class(m, r));
  std::string text = "quotient by the congruence induced by " + label_for_set(m, subset) +
                     ": " + std::to_string(q.monoid.size()) + " element(s)\n";
  emit(report, opts, text);
  return 0;
}

int run_malcev(int n, GlobalOptions& opts) {
  auto tn = monlat::full_transformation_monoid(n, opts.builder_bound);
  std::vector<monlat::Congruence> chain;
  json entries = json::array();
  for (int k = 1; k <= n; ++k) {
    auto tk = monlat::full_transformation_monoid(k);
    for (auto const& nsub : monlat::normal_subgroups_of_units(tk.monoid)) {
      auto r = monlat::malcev_congruence(tn, k, nsub);
      entries.push_back(json{{"k", k},
                             {"subgroup_order", nsub.size()},
                             {"num_classes", r.num_classes()}});
      chain.push_back(std::move(r));
    }
  }
  chain.push_back(monlat::Congruence::uniform(tn.monoid.size()));
  entries.push_back(json{{"k", nullptr}, {"subgroup_order", nullptr},
                         {"num_classes", 1}});
  std::sort(chain.begin(), chain.end());
  chain.erase(std::unique(chain.begin(), chain.end()), chain.end());

  auto enumerated = monlat::enumerate_congruences(tn.monoid, opts.cong_bound);
  bool equal = chain == enumerated;
  bool chain_shaped = true;
  for (std::size_t i = 0; i + 1 < enumerated.size(); ++i)
    chain_shaped = chain_shaped && enumerated[i].refines(enumerated[i + 1]);

  json report;
  report["n"] = n;
  report["malcev"] = std::move(entries);
  report["malcev_distinct"] = int(chain.size());
  report["enumerated"] = int(enumerated.size());
  report["equal"] = equal;
  report["is_chain"] = chain_shaped;
  std::string text = "Malcev congruences on T_" + std::to_string(n) + ": " +
                     std::to_string(chain.size()) + " distinct, enumeration finds " +
                     std::to_string(enumerated.size()) + ", equal: " + (equal ? "yes" : "no") +
                     ", chain: " + (chain_shaped ? "yes" : "no") + "\n";
  emit(report, opts, text);
  return equal ? 0 : 1;
}

monlat::IntMatrix parse_int_matrix(std::string const& text) {
  json j = json::parse(text);
  monlat::IntMatrix rows;
  for (auto const& row : j) {
    monlat::IntVector v;
    for (auto const& x : row) v.push_back(monlat::BigInt(x.get<long long>()));
    rows.push_back(std::move(v));
  }
  return rows;
}

int run_search(GlobalOptions& opts, int count, int max_size) {
  auto sample = [&](std::mt19937_64& rng) {
    for (;;) {
      int arity = 2 + int(monlat::rand_below(rng, 5));
      int gens = 1 + int(monlat::rand_below(rng, 2));
      std::vector<monlat::Transformation> generators;
      for (int g = 0; g < gens; ++g) {
        monlat::Transformation t{arity, std::vector<int>(arity)};
        for (int i = 0; i < arity; ++i) t.images[i] = int(monlat::rand_below(rng, arity));
        generators.push_back(std::move(t));
      }
      try {
        return monlat::monoid_from_transformations(arity, generators, max_size).monoid;
      } catch (monlat::Error const&) {
      }
    }
  };

  std::mt19937_64 rng(opts.seed);
  json records = json::array();
  int nonmodular = 0, phi_meet_failures = 0, psi_join_failures = 0, all_normal_count = 0;
  for (int i = 0; i < count; ++i) {
    auto m = sample(rng);
    auto norsub = monlat::enumerate_normal_submonoids(m, opts.norsub_bound, 1);
    auto congs = monlat::enumerate_congruences(m, opts.cong_bound);
    auto lat = monlat::build_lattice(norsub,
                                     [](monlat::ElementSet const& a, monlat::ElementSet const& b) {
                                       return a.subset_of(b);
                                     });
    bool modular = monlat::is_modular(lat).modular;

    // does Phi preserve meets here? does Psi preserve joins?
    bool phi_meet = true;
    for (auto const& s1 : norsub)
      for (auto const& s2 : norsub)
        if (monlat::induced_congruence(m, s1.intersect_with(s2)) !=
            monlat::meet_congruences(monlat::induced_congruence(m, s1),
                                     monlat::induced_congruence(m, s2)))
          phi_meet = false;
    bool psi_join = true;
    for (auto const& r1 : congs)
      for (auto const& r2 : congs) {
        auto joined = monlat::join_congruences(m, r1, r2);
        auto expected = monlat::normal_closure(
            m, monlat::identity_class(m, r1).union_with(monlat::identity_class(m, r2)));
        if (monlat::identity_class(m, joined) != expected) psi_join = false;
      }

    bool all_normal = true;
    for (auto const& r : congs)
      if (monlat::classify_congruence(m, r).kind != monlat::CongruenceKind::normal)
        all_normal = false;

    nonmodular += !modular;
    phi_meet_failures += !phi_meet;
    psi_join_failures += !psi_join;
    all_normal_count += all_normal;
    records.push_back(json{{"size", m.size()},
                           {"norsub", int(norsub.size())},
                           {"congruences", int(congs.size())},
                           {"norsub_modular", modular},
                           {"phi_meet_preserving", phi_meet},
                           {"psi_join_preserving", psi_join},
                           {"all_congruences_normal", all_normal}});
  }
  json report;
  report["seed"] = opts.seed;
  report["count"] = count;
  report["records"] = std::move(records);
  report["summary"] = json{{"nonmodular_norsub", nonmodular},
                           {"phi_meet_failures", phi_meet_failures},
                           {"psi_join_failures", psi_join_failures},
                           {"all_congruences_normal", all_normal_count}};
  std::string text = "searched " + std::to_string(count) + " random monoids: " +
                     std::to_string(nonmodular) + " non-modular NorSub, " +
                     std::to_string(phi_meet_failures) + " meet-preservation failures, " +
                     std::to_string(psi_join_failures) + " join-preservation failures\n";
  emit(report, opts, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lattices of normal submonoids and congruences of finite monoids"};
  app.require_subcommand(1);

  GlobalOptions opts;
  std::vector<std::string> source;
  std::string by;
  int malcev_n = 3;
  int search_count = 50, search_max_size = 6;
  std::string rows_text, gens_text;
  int z_dim = 1, z_trials = 1000, z_m = 0, z_n = 1, z_bound = 10;
  int bicyclic_bound = 5;
  bool check_normal = false, check_nsimple = false, check_csimple = false, check_modular = false;

  auto* build = app.add_subcommand("build", "Build a monoid and print its JSON");
  build->add_option("source", source, "tn N | cyclic M R | nmax N | file PATH")->required();
  add_global_flags(build, opts);

  auto* norsub = app.add_subcommand("norsub", "Normal submonoid lattice and verdicts");
  norsub->add_option("source", source)->required();
  add_global_flags(norsub, opts);

  auto* cong = app.add_subcommand("cong", "Congruence lattice and classification");
  cong->add_option("source", source)->required();
  add_global_flags(cong, opts);

  auto* blowup = app.add_subcommand("blowup", "Verify the blow-up decomposition of Cong(M)");
  blowup->add_option("source", source)->required();
  add_global_flags(blowup, opts);

  auto* check = app.add_subcommand("check", "Normality/simplicity/modularity verdicts");
  check->add_option("source", source)->required();
  check->add_flag("--normal", check_normal, "U(M) is a normal submonoid");
  check->add_flag("--normally-simple", check_nsimple, "only M and normal subgroups of U(M)");
  check->add_flag("--congruentially-simple", check_csimple,
                  "non-trivial unital congruences only on M itself");
  check->add_flag("--modular", check_modular, "NorSub lattice is modular");
  add_global_flags(check, opts);

  auto* quot = app.add_subcommand("quotient", "Quotient by the congruence induced by a subset");
  quot->add_option("source", source)->required();
  quot->add_option("--by", by, "subset as JSON array or comma list")->required();
  add_global_flags(quot, opts);

  auto* malcev = app.add_subcommand("malcev", "Compare Malcev congruences with enumeration");
  malcev->add_option("--n", malcev_n, "T_n to analyze")->required();
  add_global_flags(malcev, opts);

  auto* zg = app.add_subcommand("zgroups", "Integer subgroup computations");
  zg->require_subcommand(1);
  auto* zg_hnf = zg->add_subcommand("hnf", "Hermite normal form of generator rows");
  zg_hnf->add_option("--rows", rows_text, "JSON matrix")->required();
  add_global_flags(zg_hnf, opts);
  auto* zg_ncl = zg->add_subcommand("ncl", "Closure subgroup of nonnegative generators");
  zg_ncl->add_option("--gens", gens_text, "JSON matrix")->required();
  add_global_flags(zg_ncl, opts);
  auto* zg_mod = zg->add_subcommand("modularity", "Random modular-law trials");
  zg_mod->add_option("--k", z_dim, "dimension")->capture_default_str();
  zg_mod->add_option("--trials", z_trials, "trial count")->capture_default_str();
  add_global_flags(zg_mod, opts);
  auto* zg_nplus = zg->add_subcommand("nplus", "Bounded check of R_{m,n} on the naturals");
  zg_nplus->add_option("--m", z_m)->required();
  zg_nplus->add_option("--n", z_n)->required();
  zg_nplus->add_option("--bound", z_bound)->required();
  add_global_flags(zg_nplus, opts);

  auto* bic = app.add_subcommand("bicyclic-check", "Bounded checks of the bicyclic product");
  bic->add_option("--bound", bicyclic_bound)->required();
  add_global_flags(bic, opts);

  auto* search = app.add_subcommand("search", "Record open-question verdicts on random monoids");
  search->add_option("--count", search_count)->capture_default_str();
  search->add_option("--max-size", search_max_size)->capture_default_str();
  add_global_flags(search, opts);

  CLI11_PARSE(app, argc, argv);
  opts.apply_allow_large();

  try {
    if (build->parsed()) return run_build(source, opts);
    if (norsub->parsed()) return run_norsub(source, opts);
    if (cong->parsed()) return run_cong(source, opts);
    if (blowup->parsed()) return run_blowup(source, opts);
    if (check->parsed())
      return run_check(source, opts, check_normal, check_nsimple, check_csimple, check_modular);
    if (quot->parsed()) return run_quotient(source, opts, by);
    if (malcev->parsed()) return run_malcev(malcev_n, opts);
    if (zg->parsed()) {
      if (zg_hnf->parsed()) {
        auto rows = parse_int_matrix(rows_text);
        if (rows.empty()) monlat::raise("BadParameters", "need at least one row");
        auto h = monlat::hnf(int(rows[0].size()), rows);
        emit(monlat::subgroup_to_json(h), opts);
        return 0;
      }
      if (zg_ncl->parsed()) {
        auto gens = parse_int_matrix(gens_text);
        if (gens.empty()) monlat::raise("BadParameters", "need at least one generator");
        auto h = monlat::ncl_free_commutative(int(gens[0].size()), gens);
        emit(monlat::subgroup_to_json(h), opts);
        return 0;
      }
      if (zg_mod->parsed()) {
        auto rep = monlat::modularity_subgroups(z_dim, z_trials, opts.seed);
        emit(monlat::subgroup_modularity_report_to_json(rep), opts,
             "modular law trials at k=" + std::to_string(z_dim) + ": " +
                 std::to_string(rep.passes) + "/" + std::to_string(rep.trials) + " passed\n");
        return rep.pass() ? 0 : 1;
      }
      if (zg_nplus->parsed()) {
        auto rep = monlat::nplus_congruence_check(z_m, z_n, z_bound);
        emit(monlat::nplus_report_to_json(rep), opts,
             std::string("R_{m,n} bounded check: ") + (rep.pass() ? "PASS" : "FAIL") + "\n");
        return rep.pass() ? 0 : 1;
      }
    }
    if (bic->parsed()) {
      auto rep = monlat::bicyclic_bounded_check(bicyclic_bound);
      emit(monlat::bicyclic_report_to_json(rep), opts,
           std::string("bicyclic bounded check: ") + (rep.pass() ? "PASS" : "FAIL") + "\n");
      return rep.pass() ? 0 : 1;
    }
    if (search->parsed()) return run_search(opts, search_count, search_max_size);
  } catch (monlat::Error const& e) {
    json err{{"error", e.code()}, {"message", e.what()}};
    if (!e.witness().empty()) err["witness"] = e.witness();
    std::cout << err.dump(2) << "\n";
    return 1;
  } catch (std::exception const& e) {
    std::cout << json{{"error", "Internal"}, {"message", e.what()}}.dump(2) << "\n";
    return 1;
  }
  return 0;
}
