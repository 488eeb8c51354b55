#include "crnb.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "crnb/bisim.hpp"
#include "crnb/error.hpp"
#include "crnb/io.hpp"
#include "crnb/models.hpp"
#include "crnb/odes.hpp"
#include "crnb/reduce.hpp"
#include "crnb/sim.hpp"

struct crnb_model {
  crnb::Model model;
};

struct crnb_partition {
  crnb::Partition partition;
};

namespace {

thread_local std::string last_error;

crnb_status status_of(crnb::ErrorKind kind) {
  switch (kind) {
    case crnb::ErrorKind::Parse: return CRNB_ERR_PARSE;
    case crnb::ErrorKind::Partition: return CRNB_ERR_PARTITION;
    case crnb::ErrorKind::NotBisimulation: return CRNB_ERR_NOT_BISIMULATION;
    case crnb::ErrorKind::Precondition: return CRNB_ERR_PRECONDITION;
    case crnb::ErrorKind::Integration: return CRNB_ERR_INTEGRATION;
    case crnb::ErrorKind::Argument: return CRNB_ERR_ARGUMENT;
    case crnb::ErrorKind::Io: return CRNB_ERR_IO;
  }
  return CRNB_ERR_INTERNAL;
}

crnb_status fail(crnb_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

template <class F>
crnb_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const crnb::Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::invalid_argument& e) {
    return fail(CRNB_ERR_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(CRNB_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(CRNB_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(CRNB_ERR_INTERNAL, "unknown error");
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

void require(bool condition, const char* what) {
  if (!condition) throw crnb::Error(crnb::ErrorKind::Argument, what);
}

crnb::BisimMode mode_of(crnb_mode mode) {
  require(mode == CRNB_FORWARD || mode == CRNB_BACKWARD, "unknown mode");
  return mode == CRNB_FORWARD ? crnb::BisimMode::Forward : crnb::BisimMode::Backward;
}

crnb::OdeOptions ode_options(const crnb_sim_options* options) {
  crnb::OdeOptions out;
  if (options) {
    require(options->rtol > 0 && options->atol > 0, "tolerances must be positive");
    require(options->output_points >= 2, "need at least two output points");
    out.rtol = options->rtol;
    out.atol = options->atol;
    out.output_points = options->output_points;
  }
  return out;
}

double horizon(const crnb_sim_options* options) {
  const double t = options ? options->t_end : crnb::kDefaultHorizon;
  require(t > 0, "t_end must be positive");
  return t;
}

const crnb::InitialCondition& require_init(const crnb_model* m) {
  if (!m->model.init)
    throw crnb::Error(crnb::ErrorKind::Precondition, "model has no initial conditions");
  return *m->model.init;
}

const crnb::Partition& partition_for(const crnb_model* m, const crnb_partition* p) {
  require(p != nullptr, "null partition");
  if (p->partition.species_count() != m->model.crn.species_count())
    throw crnb::Error(crnb::ErrorKind::Partition, "incomplete partition: partition belongs to another model");
  return p->partition;
}

crnb_status emit_model(crnb::Model model, crnb_model** out) {
  *out = new crnb_model{std::move(model)};
  return CRNB_OK;
}

crnb_status emit_partition(crnb::Partition p, crnb_partition** out) {
  *out = new crnb_partition{std::move(p)};
  return CRNB_OK;
}

}  // namespace

extern "C" {

const char* crnb_version(void) { return "1.0.0"; }

const char* crnb_last_error(void) { return last_error.c_str(); }

const char* crnb_status_name(crnb_status status) {
  switch (status) {
    case CRNB_OK: return "ok";
    case CRNB_ERR_PARSE: return "parse error";
    case CRNB_ERR_PARTITION: return "invalid partition";
    case CRNB_ERR_NOT_BISIMULATION: return "not a bisimulation";
    case CRNB_ERR_PRECONDITION: return "precondition violated";
    case CRNB_ERR_INTEGRATION: return "integration failure";
    case CRNB_ERR_ARGUMENT: return "invalid argument";
    case CRNB_ERR_IO: return "i/o error";
    case CRNB_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void crnb_string_free(char* s) { std::free(s); }

crnb_status crnb_model_parse(const char* text, int validate, crnb_model** out) {
  return guarded([&] {
    require(text && out, "null argument");
    return emit_model(crnb::parse_crn(text, validate != 0), out);
  });
}

crnb_status crnb_model_import_net(const char* text, crnb_model** out) {
  return guarded([&] {
    require(text && out, "null argument");
    return emit_model(crnb::import_bngl_net(text), out);
  });
}

crnb_status crnb_model_load(const char* path, int validate, crnb_model** out) {
  return guarded([&] {
    require(path && out, "null argument");
    return emit_model(crnb::load_model(path, validate != 0), out);
  });
}

crnb_status crnb_model_running_example(crnb_model** out) {
  return guarded([&] {
    require(out, "null argument");
    return emit_model(crnb::Model{crnb::running_example(), std::nullopt, {}, {}}, out);
  });
}

crnb_status crnb_model_two_state(const char* a1, const char* a2, crnb_model** out) {
  return guarded([&] {
    require(a1 && a2 && out, "null argument");
    const auto r1 = crnb::parse_rational(a1);
    const auto r2 = crnb::parse_rational(a2);
    require(r1 > 0 && r2 > 0, "rates must be positive");
    return emit_model(crnb::Model{crnb::two_state(r1, r2), std::nullopt, {}, {}}, out);
  });
}

crnb_status crnb_model_multisite(unsigned sites, const char* const* rates, crnb_model** out) {
  return guarded([&] {
    require(out, "null argument");
    crnb::MultisiteSpec spec;
    spec.sites = sites;
    if (rates)
      for (std::size_t i = 0; i < spec.rates.size(); ++i) {
        require(rates[i], "null rate");
        spec.rates[i] = crnb::parse_rational(rates[i]);
      }
    return emit_model(crnb::multisite(spec), out);
  });
}

crnb_status crnb_model_random(uint64_t seed, size_t species, size_t reactions, int symmetric,
                              crnb_model** out) {
  return guarded([&] {
    require(out, "null argument");
    crnb::RandomCrnSpec spec;
    spec.seed = seed;
    spec.species = species;
    spec.reactions = reactions;
    spec.symmetric = symmetric != 0;
    return emit_model(crnb::Model{crnb::random_crn(spec), std::nullopt, {}, {}}, out);
  });
}

void crnb_model_free(crnb_model* model) { delete model; }

size_t crnb_model_species_count(const crnb_model* model) {
  return model ? model->model.crn.species_count() : 0;
}

size_t crnb_model_reaction_count(const crnb_model* model) {
  return model ? model->model.crn.reaction_count() : 0;
}

const char* crnb_model_species_name(const crnb_model* model, size_t index) {
  if (!model || index >= model->model.crn.species_count()) return nullptr;
  return model->model.crn.name(static_cast<crnb::SpeciesId>(index)).c_str();
}

int crnb_model_has_init(const crnb_model* model) { return model && model->model.init ? 1 : 0; }

crnb_status crnb_model_set_init(crnb_model* model, const char* text) {
  return guarded([&] {
    require(model && text, "null argument");
    model->model.init = crnb::parse_initial_conditions(text, model->model.crn);
    return CRNB_OK;
  });
}

crnb_status crnb_model_validate(const crnb_model* model, char** report, size_t* count) {
  return guarded([&] {
    require(model, "null argument");
    const auto violations = crnb::validate(model->model.crn);
    std::string text;
    for (const auto& v : violations) text += v.message + "\n";
    if (count) *count = violations.size();
    if (report) *report = copy_string(text);
    return CRNB_OK;
  });
}

crnb_status crnb_model_serialize(const crnb_model* model, char** out) {
  return guarded([&] {
    require(model && out, "null argument");
    *out = copy_string(crnb::serialize_crn(model->model));
    return CRNB_OK;
  });
}

crnb_status crnb_model_emit_odes(const crnb_model* model, char** out) {
  return guarded([&] {
    require(model && out, "null argument");
    *out = copy_string(crnb::vector_field(model->model.crn).to_string());
    return CRNB_OK;
  });
}

crnb_status crnb_partition_parse(const crnb_model* model, const char* text, crnb_partition** out) {
  return guarded([&] {
    require(model && text && out, "null argument");
    return emit_partition(crnb::parse_partition(text, model->model.crn), out);
  });
}

crnb_status crnb_partition_trivial(const crnb_model* model, crnb_partition** out) {
  return guarded([&] {
    require(model && out, "null argument");
    return emit_partition(crnb::Partition::trivial(model->model.crn.species_count()), out);
  });
}

crnb_status crnb_partition_discrete(const crnb_model* model, crnb_partition** out) {
  return guarded([&] {
    require(model && out, "null argument");
    return emit_partition(crnb::Partition::discrete(model->model.crn.species_count()), out);
  });
}

crnb_status crnb_partition_from_inits(const crnb_model* model, crnb_partition** out) {
  return guarded([&] {
    require(model && out, "null argument");
    return emit_partition(crnb::partition_from_initial_conditions(require_init(model)), out);
  });
}

crnb_status crnb_partition_embedded(const crnb_model* model, crnb_partition** out) {
  return guarded([&] {
    require(model && out, "null argument");
    *out = nullptr;
    if (model->model.blocks.empty()) return CRNB_OK;
    return emit_partition(crnb::partition_from_names(model->model.crn, model->model.blocks), out);
  });
}

void crnb_partition_free(crnb_partition* partition) { delete partition; }

size_t crnb_partition_block_count(const crnb_partition* partition) {
  return partition ? partition->partition.size() : 0;
}

size_t crnb_partition_block_size(const crnb_partition* partition, size_t block) {
  if (!partition || block >= partition->partition.size()) return 0;
  return partition->partition.block(block).size();
}

int crnb_partition_equal(const crnb_partition* a, const crnb_partition* b) {
  return a && b && a->partition == b->partition ? 1 : 0;
}

crnb_status crnb_partition_format(const crnb_model* model, const crnb_partition* partition,
                                  char** out) {
  return guarded([&] {
    require(model && out, "null argument");
    *out = copy_string(crnb::format_partition(model->model.crn, partition_for(model, partition)));
    return CRNB_OK;
  });
}

crnb_status crnb_refine(const crnb_model* model, const crnb_partition* initial, crnb_mode mode,
                        int pairwise, crnb_partition** out, crnb_refine_stats* stats) {
  return guarded([&] {
    require(model && out, "null argument");
    const auto trace = crnb::refine(model->model.crn, partition_for(model, initial), mode_of(mode),
                                    pairwise ? crnb::RefineStrategy::PairwiseSweep
                                             : crnb::RefineStrategy::Signature);
    if (stats) {
      stats->rounds = trace.rounds;
      stats->predicate_calls = trace.stats.predicate_calls;
      stats->rate_evaluations = trace.stats.rate_evaluations;
    }
    return emit_partition(trace.final, out);
  });
}

crnb_status crnb_reduce(const crnb_model* model, const crnb_partition* partition, crnb_mode mode,
                        int annotate, crnb_model** out, crnb_reduce_info* info) {
  return guarded([&] {
    require(model && out, "null argument");
    const auto& crn = model->model.crn;
    const auto& p = partition_for(model, partition);
    auto reduced = crnb::reduce(crn, p, mode_of(mode));

    crnb::Model result;
    if (model->model.init) result.init = crnb::reduce_initial_condition(reduced, *model->model.init);
    if (annotate) {
      result.comments.push_back(std::string(crnb::to_string(reduced.mode)) + " reduction of " +
                                std::to_string(crn.species_count()) + " species, " +
                                std::to_string(crn.reaction_count()) + " reactions");
      const std::string formatted = crnb::format_partition(crn, p);
      for (const auto& line : crnb::split_top_level(formatted, '\n'))
        if (!line.empty()) result.comments.push_back("block " + std::string(line));
    }
    if (info) {
      info->steps = reduced.steps;
      info->step_bound = crnb::reduction_step_bound(crn.reaction_count(), crn.species_count());
    }
    result.crn = std::move(reduced.crn);
    return emit_model(std::move(result), out);
  });
}

crnb_status crnb_check(const crnb_model* model, const crnb_partition* partition,
                       crnb_property property, int* holds, char** detail) {
  return guarded([&] {
    require(model && holds, "null argument");
    const auto& crn = model->model.crn;
    const auto& p = partition_for(model, partition);
    std::string why;
    switch (property) {
      case CRNB_PROP_BISIM_FB:
      case CRNB_PROP_BISIM_BB: {
        const auto mode = property == CRNB_PROP_BISIM_FB ? crnb::BisimMode::Forward
                                                         : crnb::BisimMode::Backward;
        if (auto bad = crnb::find_bisimulation_violation(crn, p, mode))
          why = crn.name(bad->first) + " and " + crn.name(bad->second) + " are not " +
                std::string(crnb::to_string(mode)) + " equivalent";
        break;
      }
      case CRNB_PROP_ORD_LUMP:
        if (auto bad = crnb::find_ordinary_lumping_violation(crn, p)) why = bad->detail;
        break;
      case CRNB_PROP_EXACT_LUMP:
        if (auto bad = crnb::find_exact_lumping_violation(crn, p)) why = bad->detail;
        break;
      default:
        throw crnb::Error(crnb::ErrorKind::Argument, "unknown property");
    }
    *holds = why.empty() ? 1 : 0;
    if (detail) *detail = copy_string(why);
    return CRNB_OK;
  });
}

crnb_status crnb_emit_lumped_odes(const crnb_model* model, const crnb_partition* partition,
                                  crnb_mode mode, char** out) {
  return guarded([&] {
    require(model && out, "null argument");
    const auto& crn = model->model.crn;
    const auto& p = partition_for(model, partition);
    const auto field = mode_of(mode) == crnb::BisimMode::Forward ? crnb::lumped_field_forward(crn, p)
                                                                 : crnb::lumped_field_backward(crn, p);
    *out = copy_string(field.to_string());
    return CRNB_OK;
  });
}

void crnb_sim_options_default(crnb_sim_options* options) {
  if (!options) return;
  const crnb::OdeOptions defaults;
  options->t_end = crnb::kDefaultHorizon;
  options->rtol = defaults.rtol;
  options->atol = defaults.atol;
  options->output_points = defaults.output_points;
}

crnb_status crnb_simulate(const crnb_model* model, const crnb_sim_options* options, char** csv) {
  return guarded([&] {
    require(model && csv, "null argument");
    const auto v0 = crnb::to_doubles(require_init(model));
    const auto trajectory = crnb::integrate(crnb::vector_field(model->model.crn), v0,
                                            horizon(options), ode_options(options));
    *csv = copy_string(trajectory.to_csv());
    return CRNB_OK;
  });
}

crnb_status crnb_compare(const crnb_model* model, const crnb_partition* partition, crnb_mode mode,
                         const crnb_sim_options* options, double tol, crnb_compare_report* report) {
  return guarded([&] {
    require(model && report, "null argument");
    require(tol > 0, "tolerance must be positive");
    const auto& crn = model->model.crn;
    const auto& p = partition_for(model, partition);
    const auto& v0 = require_init(model);
    *report = crnb_compare_report{};
    report->mode = mode;
    if (mode_of(mode) == crnb::BisimMode::Forward) {
      const auto r = crnb::verify_forward(crn, p, v0, horizon(options), tol, ode_options(options));
      report->max_error = r.max_error;
      report->passed = r.passed;
      report->reduced_species = r.reduced_species;
      report->reduced_reactions = r.reduced_reactions;
    } else {
      const auto r = crnb::verify_backward(crn, p, v0, horizon(options), tol, ode_options(options));
      report->max_spread = r.max_spread;
      report->max_deviation = r.max_deviation;
      report->passed = r.passed;
      report->reduced_species = r.reduced_species;
      report->reduced_reactions = r.reduced_reactions;
    }
    return CRNB_OK;
  });
}

}  // extern "C"
