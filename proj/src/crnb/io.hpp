#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "crnb/core.hpp"

namespace crnb {

/// A CRN document: the network plus optional initial concentrations,
/// optional `block:` lines and header comments.
struct Model {
  Crn crn;
  std::optional<InitialCondition> init;
  std::vector<std::vector<std::string>> blocks;
  std::vector<std::string> comments;  // written as leading "# ..." lines
};

/// Native text format:
///
///   # comment
///   species: A B C D E          (optional; if present, all species must be declared)
///   A + B -> C , 2              (reactants -> products , rate; "0" is the empty side)
///   C + D -> 2C + D , 5
///   init: A = 1                 (unlisted species start at 0)
///   block: C, E                 (optional partition hint)
///
/// With `validate_reactions`, reactions violating the elementary
/// restrictions are rejected with their line number.
Model parse_crn(std::string_view text, bool validate_reactions = true);

/// Deterministic text: comments, species header, reactions sorted by
/// (reactants, products), init lines for every species when present,
/// block lines when present.
std::string serialize_crn(const Model& model);
std::string serialize_crn(const Crn& crn);

/// Imports the `begin parameters` / `begin species` / `begin reactions`
/// blocks of a BioNetGen `.net` file. Rates and concentrations may be
/// numeric literals, parameter names, or products of those.
Model import_bngl_net(std::string_view text);

/// One comma-separated block per line. Species not mentioned form one
/// implicit final block; an empty text gives the trivial partition.
Partition parse_partition(std::string_view text, const Crn& crn);

/// Blocks from names, with the same implicit-final-block convention.
Partition partition_from_names(const Crn& crn, const std::vector<std::vector<std::string>>& blocks);

/// One line per block, members joined by ", ".
std::string format_partition(const Crn& crn, const Partition& partition);

/// Species with exactly equal initial values share a block.
Partition partition_from_initial_conditions(const InitialCondition& v0);

/// Lines "A = 1" or "init: A = 1"; unlisted species are 0.
InitialCondition parse_initial_conditions(std::string_view text, const Crn& crn);

/// Splits at `separator` outside parentheses.
std::vector<std::string_view> split_top_level(std::string_view text, char separator);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

/// `.net` files go through the BioNetGen importer, anything else through
/// the native parser.
Model load_model(const std::string& path, bool validate_reactions = true);

}  // namespace crnb
