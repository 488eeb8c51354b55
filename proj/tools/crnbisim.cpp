// crnbisim: command-line front end over the crnb C API.
//
// Exit codes: 0 ok, 1 parse/io/usage error, 2 invalid partition or violated
// precondition, 3 integration failure, 4 property fails or tolerance
// exceeded, 5 internal error.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "crnb.h"

namespace {

enum Exit : int { kOk = 0, kInput = 1, kPartition = 2, kIntegration = 3, kFails = 4, kInternal = 5 };

struct ModelDeleter {
  void operator()(crnb_model* m) const { crnb_model_free(m); }
};
struct PartitionDeleter {
  void operator()(crnb_partition* p) const { crnb_partition_free(p); }
};
using ModelPtr = std::unique_ptr<crnb_model, ModelDeleter>;
using PartitionPtr = std::unique_ptr<crnb_partition, PartitionDeleter>;

struct Failure {
  int code;
};

int exit_code(crnb_status status) {
  switch (status) {
    case CRNB_OK: return kOk;
    case CRNB_ERR_PARSE:
    case CRNB_ERR_IO:
    case CRNB_ERR_ARGUMENT: return kInput;
    case CRNB_ERR_PARTITION:
    case CRNB_ERR_NOT_BISIMULATION:
    case CRNB_ERR_PRECONDITION: return kPartition;
    case CRNB_ERR_INTEGRATION: return kIntegration;
    default: return kInternal;
  }
}

void check(crnb_status status) {
  if (status == CRNB_OK) return;
  std::cerr << "crnbisim: " << crnb_status_name(status) << ": " << crnb_last_error() << "\n";
  throw Failure{exit_code(status)};
}

std::string take(char* s) {
  std::string out = s ? s : "";
  crnb_string_free(s);
  return out;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "crnbisim: i/o error: cannot open " << path << "\n";
    throw Failure{kInput};
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) {
    std::cerr << "crnbisim: i/o error: cannot write " << path << "\n";
    throw Failure{kInput};
  }
}

ModelPtr load(const std::string& path, bool validate = true) {
  crnb_model* m = nullptr;
  check(crnb_model_load(path.c_str(), validate ? 1 : 0, &m));
  return ModelPtr(m);
}

crnb_mode parse_mode(const std::string& mode) {
  return mode == "fb" ? CRNB_FORWARD : CRNB_BACKWARD;
}

const char* mode_label(crnb_mode mode) { return mode == CRNB_FORWARD ? "forward" : "backward"; }

struct PartitionFlags {
  std::string path;
  bool from_inits = false;
};

// Initial partition: explicit file, then embedded "block:" lines, then
// --from-inits, then the mode default.
PartitionPtr initial_partition(const crnb_model* model, const PartitionFlags& flags,
                               std::optional<crnb_mode> mode) {
  crnb_partition* p = nullptr;
  if (!flags.path.empty()) {
    check(crnb_partition_parse(model, read_text(flags.path).c_str(), &p));
    return PartitionPtr(p);
  }
  check(crnb_partition_embedded(model, &p));
  if (p) return PartitionPtr(p);
  if (flags.from_inits) {
    check(crnb_partition_from_inits(model, &p));
    return PartitionPtr(p);
  }
  if (mode == CRNB_BACKWARD) {
    if (crnb_model_has_init(model)) {
      check(crnb_partition_from_inits(model, &p));
      return PartitionPtr(p);
    }
    std::cerr << "crnbisim: warning: no initial conditions; backward refinement starts from the "
                 "trivial partition\n";
  }
  check(crnb_partition_trivial(model, &p));
  return PartitionPtr(p);
}

PartitionPtr coarsest(const crnb_model* model, const crnb_partition* initial, crnb_mode mode,
                      bool pairwise, crnb_refine_stats* stats) {
  crnb_partition* p = nullptr;
  check(crnb_refine(model, initial, mode, pairwise ? 1 : 0, &p, stats));
  return PartitionPtr(p);
}

void apply_init(crnb_model* model, const std::string& path) {
  if (!path.empty()) check(crnb_model_set_init(model, read_text(path).c_str()));
}

std::string block_sizes(const crnb_partition* p) {
  std::string out;
  for (size_t b = 0; b < crnb_partition_block_count(p); ++b) {
    if (b) out += ' ';
    out += std::to_string(crnb_partition_block_size(p, b));
  }
  return out;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

// ---------------------------------------------------------------------------

int cmd_validate(const std::string& input) {
  auto model = load(input, false);
  char* report = nullptr;
  size_t count = 0;
  check(crnb_model_validate(model.get(), &report, &count));
  const std::string text = take(report);
  if (count == 0) {
    std::cout << "valid: " << crnb_model_species_count(model.get()) << " species, "
              << crnb_model_reaction_count(model.get()) << " reactions\n";
    return kOk;
  }
  std::cout << text;
  return kInput;
}

struct ReduceFlags {
  std::string input, mode = "fb", out;
  PartitionFlags partition;
  bool annotate = false, emit_odes = false, pairwise = false;
};

int cmd_reduce(const ReduceFlags& f) {
  auto model = load(f.input);
  const crnb_mode mode = parse_mode(f.mode);
  auto initial = initial_partition(model.get(), f.partition, mode);
  crnb_refine_stats stats{};
  auto final_partition = coarsest(model.get(), initial.get(), mode, f.pairwise, &stats);

  crnb_model* reduced_raw = nullptr;
  crnb_reduce_info info{};
  check(crnb_reduce(model.get(), final_partition.get(), mode, f.annotate ? 1 : 0, &reduced_raw, &info));
  ModelPtr reduced(reduced_raw);

  char* text = nullptr;
  check(crnb_model_serialize(reduced.get(), &text));
  write_text(f.out, take(text));

  std::ostream& report = f.out.empty() || f.out == "-" ? std::cerr : std::cout;
  char* blocks = nullptr;
  check(crnb_partition_format(model.get(), final_partition.get(), &blocks));
  report << "mode: " << mode_label(mode) << "\n"
         << "initial blocks: " << crnb_partition_block_count(initial.get()) << "\n"
         << "rounds: " << stats.rounds << "\n"
         << "species: " << crnb_model_species_count(model.get()) << " -> "
         << crnb_model_species_count(reduced.get()) << "\n"
         << "reactions: " << crnb_model_reaction_count(model.get()) << " -> "
         << crnb_model_reaction_count(reduced.get()) << "\n"
         << "block sizes: " << block_sizes(final_partition.get()) << "\n"
         << "reduction steps: " << info.steps << "\n";
  std::istringstream lines(take(blocks));
  for (std::string line; std::getline(lines, line);) report << "block: " << line << "\n";
  if (f.emit_odes) {
    char* odes = nullptr;
    check(crnb_emit_lumped_odes(model.get(), final_partition.get(), mode, &odes));
    report << take(odes);
  }
  return kOk;
}

int cmd_check(const std::string& input, const PartitionFlags& pf, const std::string& what) {
  auto model = load(input);
  auto partition = initial_partition(model.get(), pf, std::nullopt);
  crnb_property property = CRNB_PROP_BISIM_FB;
  if (what == "bisim-bb") property = CRNB_PROP_BISIM_BB;
  if (what == "ord-lump") property = CRNB_PROP_ORD_LUMP;
  if (what == "exact-lump") property = CRNB_PROP_EXACT_LUMP;
  int holds = 0;
  char* detail = nullptr;
  check(crnb_check(model.get(), partition.get(), property, &holds, &detail));
  const std::string why = take(detail);
  if (holds) {
    std::cout << what << ": holds\n";
    return kOk;
  }
  std::cout << what << ": fails: " << why << "\n";
  return kFails;
}

int cmd_odes(const std::string& input, const std::string& mode_text, const PartitionFlags& pf) {
  auto model = load(input);
  char* text = nullptr;
  if (mode_text.empty()) {
    check(crnb_model_emit_odes(model.get(), &text));
  } else {
    const crnb_mode mode = parse_mode(mode_text);
    PartitionPtr partition;
    if (!pf.path.empty()) {
      partition = initial_partition(model.get(), pf, mode);
    } else {
      auto initial = initial_partition(model.get(), pf, mode);
      partition = coarsest(model.get(), initial.get(), mode, false, nullptr);
    }
    check(crnb_emit_lumped_odes(model.get(), partition.get(), mode, &text));
  }
  std::cout << take(text);
  return kOk;
}

struct SimFlags {
  double t_end = 0, rtol = 0, atol = 0;
  size_t points = 0;
  std::string init;
};

crnb_sim_options sim_options(const SimFlags& f, double default_horizon) {
  crnb_sim_options o;
  crnb_sim_options_default(&o);
  o.t_end = f.t_end > 0 ? f.t_end : default_horizon;
  if (f.rtol > 0) o.rtol = f.rtol;
  if (f.atol > 0) o.atol = f.atol;
  if (f.points > 0) o.output_points = f.points;
  return o;
}

int cmd_simulate(const std::string& input, const SimFlags& f, const std::string& out) {
  auto model = load(input);
  apply_init(model.get(), f.init);
  crnb_sim_options o = sim_options(f, 50.0);
  char* csv = nullptr;
  check(crnb_simulate(model.get(), &o, &csv));
  write_text(out, take(csv));
  return kOk;
}

int cmd_compare(const std::string& input, const std::string& mode_text, const PartitionFlags& pf,
                const SimFlags& f, double tol) {
  auto model = load(input);
  apply_init(model.get(), f.init);
  const crnb_mode mode = parse_mode(mode_text);
  PartitionPtr partition;
  if (!pf.path.empty()) {
    partition = initial_partition(model.get(), pf, mode);
  } else {
    auto initial = initial_partition(model.get(), pf, mode);
    partition = coarsest(model.get(), initial.get(), mode, false, nullptr);
  }
  crnb_sim_options o = sim_options(f, 50.0);
  crnb_compare_report r{};
  check(crnb_compare(model.get(), partition.get(), mode, &o, tol, &r));
  std::cout << "mode: " << mode_label(mode) << "\n"
            << "t_end: " << o.t_end << "\n"
            << "reduced: " << r.reduced_species << " species, " << r.reduced_reactions
            << " reactions\n";
  if (mode == CRNB_FORWARD) {
    std::cout << "max block-sum error: " << format_double(r.max_error) << "\n";
  } else {
    std::cout << "max within-block spread: " << format_double(r.max_spread) << "\n"
              << "max representative deviation: " << format_double(r.max_deviation) << "\n";
  }
  std::cout << "tolerance: " << format_double(tol) << "\n"
            << (r.passed ? "PASS" : "FAIL") << "\n";
  return r.passed ? kOk : kFails;
}

struct GenFlags {
  std::string kind, out, a1 = "1", a2 = "2";
  unsigned sites = 2;
  std::vector<std::string> rates;
  uint64_t seed = 0;
  size_t species = 4, reactions = 6;
  bool symmetric = false;
};

int cmd_gen(const GenFlags& f) {
  crnb_model* m = nullptr;
  if (f.kind == "running-example") {
    check(crnb_model_running_example(&m));
  } else if (f.kind == "two-state") {
    check(crnb_model_two_state(f.a1.c_str(), f.a2.c_str(), &m));
  } else if (f.kind == "multisite") {
    std::vector<const char*> rates;
    for (const auto& r : f.rates) rates.push_back(r.c_str());
    if (!rates.empty() && rates.size() != 6) {
      std::cerr << "crnbisim: --rates needs exactly six values\n";
      return kInput;
    }
    check(crnb_model_multisite(f.sites, rates.empty() ? nullptr : rates.data(), &m));
  } else {
    check(crnb_model_random(f.seed, f.species, f.reactions, f.symmetric ? 1 : 0, &m));
  }
  ModelPtr model(m);
  char* text = nullptr;
  check(crnb_model_serialize(model.get(), &text));
  write_text(f.out, take(text));
  return kOk;
}

int cmd_bench(unsigned max_sites, const std::vector<std::string>& files, const std::string& out) {
  std::vector<std::pair<std::string, ModelPtr>> models;
  {
    crnb_model* m = nullptr;
    check(crnb_model_running_example(&m));
    models.emplace_back("running-example", ModelPtr(m));
  }
  for (unsigned n = 1; n <= max_sites; ++n) {
    crnb_model* m = nullptr;
    check(crnb_model_multisite(n, nullptr, &m));
    models.emplace_back("multisite-" + std::to_string(n), ModelPtr(m));
  }
  for (const auto& path : files) models.emplace_back(path, load(path));

  using clock = std::chrono::steady_clock;
  auto ms = [](clock::duration d) { return std::chrono::duration<double, std::milli>(d).count(); };
  std::ostringstream csv;
  csv << "model,|R|,|S|,mode,reduced |R|,reduced |S|,refine-ms,reduce-ms\n";
  for (const auto& [name, model] : models) {
    for (crnb_mode mode : {CRNB_FORWARD, CRNB_BACKWARD}) {
      auto initial = initial_partition(model.get(), {}, mode);
      const auto t0 = clock::now();
      auto partition = coarsest(model.get(), initial.get(), mode, false, nullptr);
      const auto t1 = clock::now();
      crnb_model* reduced_raw = nullptr;
      check(crnb_reduce(model.get(), partition.get(), mode, 0, &reduced_raw, nullptr));
      const auto t2 = clock::now();
      ModelPtr reduced(reduced_raw);
      char buf[64];
      csv << name << ',' << crnb_model_reaction_count(model.get()) << ','
          << crnb_model_species_count(model.get()) << ',' << (mode == CRNB_FORWARD ? "fb" : "bb")
          << ',' << crnb_model_reaction_count(reduced.get()) << ','
          << crnb_model_species_count(reduced.get()) << ',';
      std::snprintf(buf, sizeof buf, "%.3f,%.3f", ms(t1 - t0), ms(t2 - t1));
      csv << buf << '\n';
    }
  }
  write_text(out, csv.str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Forward/backward bisimulation reduction of mass-action reaction networks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(crnb_version()));
  const std::vector<std::string> modes{"fb", "bb"};

  std::function<int()> run;

  auto* validate = app.add_subcommand("validate", "Check the elementary-reaction restrictions");
  std::string validate_input;
  validate->add_option("input", validate_input, "Model file (native or .net)")->required();
  validate->callback([&] { run = [&] { return cmd_validate(validate_input); }; });

  auto* reduce = app.add_subcommand("reduce", "Compute the coarsest bisimulation and the quotient CRN");
  ReduceFlags rf;
  reduce->add_option("input", rf.input, "Model file")->required();
  reduce->add_option("--mode", rf.mode, "fb (forward) or bb (backward)")
      ->check(CLI::IsMember(modes))->capture_default_str();
  reduce->add_option("--partition", rf.partition.path, "Initial partition file");
  reduce->add_flag("--from-inits", rf.partition.from_inits, "Initial partition from initial conditions");
  reduce->add_option("--out", rf.out, "Write the reduced CRN here (default stdout)");
  reduce->add_flag("--annotate", rf.annotate, "Add header comments describing the reduction");
  reduce->add_flag("--emit-odes", rf.emit_odes, "Print the lumped ODEs with the report");
  reduce->add_flag("--pairwise", rf.pairwise, "Refine with the pairwise quotient sweep");
  reduce->callback([&] { run = [&] { return cmd_reduce(rf); }; });

  auto* checkc = app.add_subcommand("check", "Decide a bisimulation or lumpability property");
  std::string check_input, what;
  PartitionFlags check_pf;
  checkc->add_option("input", check_input, "Model file")->required();
  checkc->add_option("--partition", check_pf.path, "Partition file (default: embedded blocks)");
  checkc->add_flag("--from-inits", check_pf.from_inits, "Partition from initial conditions");
  checkc->add_option("--what", what, "Property")
      ->required()
      ->check(CLI::IsMember({"bisim-fb", "bisim-bb", "ord-lump", "exact-lump"}));
  checkc->callback([&] { run = [&] { return cmd_check(check_input, check_pf, what); }; });

  auto* odes = app.add_subcommand("odes", "Print the mass-action ODEs, or the lumped ODEs with --mode");
  std::string odes_input, odes_mode;
  PartitionFlags odes_pf;
  odes->add_option("input", odes_input, "Model file")->required();
  odes->add_option("--mode", odes_mode, "Lump by this bisimulation (fb or bb)")->check(CLI::IsMember(modes));
  odes->add_option("--partition", odes_pf.path, "Lumping partition (default: coarsest)");
  odes->add_flag("--from-inits", odes_pf.from_inits, "Start refinement from initial conditions");
  odes->callback([&] { run = [&] { return cmd_odes(odes_input, odes_mode, odes_pf); }; });

  SimFlags sim;
  auto add_sim_flags = [&](CLI::App* cmd) {
    cmd->add_option("--t-end", sim.t_end, "Time horizon (default 50)");
    cmd->add_option("--rtol", sim.rtol, "Relative tolerance (default 1e-8)");
    cmd->add_option("--atol", sim.atol, "Absolute tolerance (default 1e-10)");
    cmd->add_option("--points", sim.points, "Output grid points (default 201)");
    cmd->add_option("--init", sim.init, "Initial conditions file (X = value lines)");
  };

  auto* simulate = app.add_subcommand("simulate", "Integrate the ODEs and write a CSV trajectory");
  std::string sim_input, sim_out;
  simulate->add_option("input", sim_input, "Model file")->required();
  simulate->add_option("--out", sim_out, "CSV output (default stdout)");
  add_sim_flags(simulate);
  simulate->callback([&] { run = [&] { return cmd_simulate(sim_input, sim, sim_out); }; });

  auto* compare = app.add_subcommand("compare", "Compare original and reduced trajectories");
  std::string cmp_input, cmp_mode = "fb";
  PartitionFlags cmp_pf;
  double tol = 1e-6;
  compare->add_option("input", cmp_input, "Model file")->required();
  compare->add_option("--mode", cmp_mode, "fb or bb")->check(CLI::IsMember(modes))->capture_default_str();
  compare->add_option("--partition", cmp_pf.path, "Bisimulation to verify (default: coarsest)");
  compare->add_flag("--from-inits", cmp_pf.from_inits, "Start refinement from initial conditions");
  compare->add_option("--tol", tol, "Acceptance tolerance")->capture_default_str();
  add_sim_flags(compare);
  compare->callback([&] { run = [&] { return cmd_compare(cmp_input, cmp_mode, cmp_pf, sim, tol); }; });

  auto* gen = app.add_subcommand("gen", "Write a built-in or generated model");
  GenFlags gf;
  gen->add_option("kind", gf.kind, "running-example, two-state, multisite or random")
      ->required()
      ->check(CLI::IsMember({"running-example", "two-state", "multisite", "random"}));
  gen->add_option("--out", gf.out, "Output file (default stdout)");
  gen->add_option("--a1", gf.a1, "two-state: rate F -> G")->capture_default_str();
  gen->add_option("--a2", gf.a2, "two-state: rate G -> F")->capture_default_str();
  gen->add_option("--sites", gf.sites, "multisite: number of sites")->capture_default_str();
  gen->add_option("--rates", gf.rates, "multisite: six rates (E-bind E-unbind E-cat F-bind F-unbind F-cat)");
  gen->add_option("--seed", gf.seed, "random: seed")->capture_default_str();
  gen->add_option("--species", gf.species, "random: species count")->capture_default_str();
  gen->add_option("--reactions", gf.reactions, "random: reaction count")->capture_default_str();
  gen->add_flag("--symmetric", gf.symmetric, "random: close under a species involution");
  gen->callback([&] { run = [&] { return cmd_gen(gf); }; });

  auto* bench = app.add_subcommand("bench", "Time refinement and reduction, CSV output");
  unsigned max_sites = 4;
  std::vector<std::string> bench_files;
  std::string bench_out;
  bench->add_option("--max-sites", max_sites, "Multisite models 1..n")->capture_default_str();
  bench->add_option("--model", bench_files, "Additional model files");
  bench->add_option("--out", bench_out, "CSV output (default stdout)");
  bench->callback([&] { run = [&] { return cmd_bench(max_sites, bench_files, bench_out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }
  try {
    return run();
  } catch (const Failure& f) {
    return f.code;
  }
}
