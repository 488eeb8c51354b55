#include "crnb/io.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "crnb/error.hpp"

namespace crnb {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string_view strip_comment(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  return line;
}

bool starts_with_keyword(std::string_view line, std::string_view keyword, std::string_view& rest) {
  if (line.substr(0, keyword.size()) != keyword) return false;
  rest = line.substr(keyword.size());
  return true;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

std::vector<std::string_view> split_whitespace(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

/// Column (1-based) of `part` inside `line`; both must view the same buffer.
std::size_t column_of(std::string_view line, std::string_view part) {
  return static_cast<std::size_t>(part.data() - line.data()) + 1;
}

class NativeParser {
 public:
  NativeParser(std::string_view text, bool validate) : text_(text), validate_(validate) {}

  Model run() {
    auto lines = split_lines(text_);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      line_no_ = i + 1;
      line_ = lines[i];
      auto content = trim(strip_comment(line_));
      if (content.empty()) continue;
      std::string_view rest;
      if (starts_with_keyword(content, "species:", rest)) {
        declare(rest);
      } else if (starts_with_keyword(content, "init:", rest)) {
        init_line(rest);
      } else if (starts_with_keyword(content, "block:", rest)) {
        block_line(rest);
      } else if (content.find("->") != std::string_view::npos) {
        reaction_line(content);
      } else {
        fail(content, "unrecognized line");
      }
    }
    return finish();
  }

 private:
  [[noreturn]] void fail(std::string_view at, const std::string& message) const {
    throw ParseError(line_no_, column_of(line_, at), message);
  }

  void declare(std::string_view rest) {
    has_header_ = true;
    for (auto token : split_whitespace(rest)) {
      if (!is_valid_species_name(token)) fail(token, "invalid species name '" + std::string(token) + "'");
      if (!declared_.insert(std::string(token)).second)
        fail(token, "species '" + std::string(token) + "' declared twice");
      intern(token);
    }
  }

  SpeciesId intern(std::string_view name) {
    auto [it, inserted] = ids_.try_emplace(std::string(name), static_cast<SpeciesId>(names_.size()));
    if (inserted) names_.emplace_back(name);
    return it->second;
  }

  SpeciesId use(std::string_view name) {
    if (!is_valid_species_name(name)) fail(name, "invalid species name '" + std::string(name) + "'");
    if (has_header_ && !declared_.count(std::string(name)))
      fail(name, "undeclared species '" + std::string(name) + "'");
    return intern(name);
  }

  Multiset side(std::string_view text) {
    Multiset out;
    auto t = trim(text);
    if (t == "0") return out;
    if (t.empty()) fail(text.empty() ? line_ : text, "empty reaction side (write 0 for none)");
    std::size_t start = 0;
    while (true) {
      auto plus = t.find('+', start);
      auto term = trim(t.substr(start, plus == std::string_view::npos ? std::string_view::npos
                                                                      : plus - start));
      if (term.empty()) fail(t.substr(start), "missing species term");
      std::size_t digits = 0;
      while (digits < term.size() && std::isdigit(static_cast<unsigned char>(term[digits]))) ++digits;
      unsigned coefficient = 1;
      auto name = term;
      if (digits > 0) {
        if (digits > 6) fail(term, "coefficient too large");
        coefficient = static_cast<unsigned>(std::stoul(std::string(term.substr(0, digits))));
        name = term.substr(digits);
        if (!name.empty() && name.front() == '*') name.remove_prefix(1);
        name = trim(name);
        if (name.empty()) fail(term, "missing species after coefficient");
        if (coefficient == 0) fail(term, "zero coefficient");
      }
      out.add(use(name), coefficient);
      if (plus == std::string_view::npos) break;
      start = plus + 1;
    }
    return out;
  }

  void reaction_line(std::string_view content) {
    auto arrow = content.find("->");
    auto lhs = content.substr(0, arrow);
    auto rhs_and_rate = content.substr(arrow + 2);
    auto parts = split_top_level(rhs_and_rate, ',');
    if (parts.size() < 2) fail(content, "missing ', rate' after products");
    auto rate_text = trim(parts.back());
    auto rhs = rhs_and_rate.substr(0, static_cast<std::size_t>(parts.back().data() - rhs_and_rate.data()) - 1);

    Reaction r;
    r.reactants = side(lhs);
    r.products = side(rhs);
    try {
      r.rate = parse_rational(rate_text);
    } catch (const std::invalid_argument& e) {
      fail(rate_text.empty() ? parts.back() : rate_text, e.what());
    }
    if (validate_) {
      if (r.rate <= 0) fail(rate_text, "rate must be positive");
      const unsigned molecules = r.reactants.size();
      if (molecules == 0) fail(lhs, "reaction has no reactants");
      if (molecules > 2) fail(lhs, "reactants exceed multiplicity 2");
    }
    reactions_.push_back(std::move(r));
  }

  void init_line(std::string_view rest) {
    auto eq = rest.find('=');
    if (eq == std::string_view::npos) fail(rest, "expected 'init: X = value'");
    auto name = trim(rest.substr(0, eq));
    auto value_text = trim(rest.substr(eq + 1));
    SpeciesId id = use(name);
    Rational value;
    try {
      value = parse_rational(value_text);
    } catch (const std::invalid_argument& e) {
      fail(value_text.empty() ? rest : value_text, e.what());
    }
    if (value < 0) fail(value_text, "initial concentration must be nonnegative");
    inits_.emplace_back(id, std::move(value));
  }

  void block_line(std::string_view rest) {
    std::vector<std::string> block;
    for (auto item : split_top_level(rest, ',')) {
      auto name = trim(item);
      if (name.empty()) fail(rest, "empty entry in block");
      use(name);
      block.emplace_back(name);
    }
    if (!block.empty()) blocks_.push_back(std::move(block));
  }

  Model finish() {
    Model model;
    std::vector<std::string> names = names_;
    model.crn = Crn(std::move(names), std::move(reactions_));
    if (!inits_.empty()) {
      InitialCondition v0{std::vector<Rational>(model.crn.species_count(), Rational(0))};
      for (auto& [old_id, value] : inits_) v0.values[*model.crn.find(names_[old_id])] = value;
      model.init = std::move(v0);
    }
    model.blocks = std::move(blocks_);
    return model;
  }

  std::string_view text_;
  bool validate_;
  std::size_t line_no_ = 0;
  std::string_view line_;
  bool has_header_ = false;
  std::set<std::string> declared_;
  std::map<std::string, SpeciesId> ids_;
  std::vector<std::string> names_;
  std::vector<Reaction> reactions_;
  std::vector<std::pair<SpeciesId, Rational>> inits_;
  std::vector<std::vector<std::string>> blocks_;
};

// ---------------------------------------------------------------------------
// BioNetGen .net subset

class NetImporter {
 public:
  explicit NetImporter(std::string_view text) : text_(text) {}

  Model run() {
    auto lines = split_lines(text_);
    std::string section;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      line_no_ = i + 1;
      line_ = lines[i];
      auto content = trim(strip_comment(line_));
      if (content.empty()) continue;
      auto words = split_whitespace(content);
      if (words[0] == "begin") {
        if (!section.empty()) fail(content, "nested 'begin' inside '" + section + "'");
        section = join(words, 1);
        if (section != "parameters" && section != "species" && section != "reactions" &&
            section != "groups" && section != "molecule types")
          fail(content, "unsupported block 'begin " + section + "'");
        continue;
      }
      if (words[0] == "end") {
        if (section.empty() || join(words, 1) != section) fail(content, "unmatched '" + std::string(content) + "'");
        section.clear();
        continue;
      }
      if (section.empty()) {
        if (content.substr(0, 14) == "substanceUnits") continue;
        fail(content, "content outside of a block");
      }
      if (section == "parameters") {
        parameter(words, content);
      } else if (section == "species") {
        species(words, content);
      } else if (section == "reactions") {
        reaction(words, content);
      }
    }
    if (!section.empty()) throw ParseError(line_no_, 0, "missing 'end " + section + "'");

    Model model;
    std::vector<std::string> names = names_;
    model.crn = Crn(std::move(names), std::move(reactions_));
    InitialCondition v0{std::vector<Rational>(model.crn.species_count(), Rational(0))};
    for (std::size_t i = 0; i < names_.size(); ++i) v0.values[*model.crn.find(names_[i])] = concentrations_[i];
    model.init = std::move(v0);
    return model;
  }

 private:
  [[noreturn]] void fail(std::string_view at, const std::string& message) const {
    throw ParseError(line_no_, column_of(line_, at), message);
  }

  static std::string join(const std::vector<std::string_view>& words, std::size_t from) {
    std::string out;
    for (std::size_t i = from; i < words.size(); ++i) {
      if (!out.empty()) out += ' ';
      out += words[i];
    }
    return out;
  }

  Rational evaluate(std::string_view expr) const {
    if (expr.find_first_of("/+()^") != std::string_view::npos ||
        (expr.find('-') != std::string_view::npos && expr.find_first_of("eE") == std::string_view::npos))
      fail(expr, "unsupported rate expression '" + std::string(expr) + "'");
    Rational value = 1;
    std::size_t start = 0;
    while (true) {
      auto star = expr.find('*', start);
      auto factor = expr.substr(start, star == std::string_view::npos ? std::string_view::npos : star - start);
      if (factor.empty()) fail(expr, "malformed expression '" + std::string(expr) + "'");
      if (std::isdigit(static_cast<unsigned char>(factor.front())) || factor.front() == '.') {
        try {
          value *= parse_rational(factor);
        } catch (const std::invalid_argument& e) {
          fail(factor, e.what());
        }
      } else {
        auto it = parameters_.find(std::string(factor));
        if (it == parameters_.end()) fail(factor, "unknown parameter '" + std::string(factor) + "'");
        value *= it->second;
      }
      if (star == std::string_view::npos) break;
      start = star + 1;
    }
    return value;
  }

  void parameter(const std::vector<std::string_view>& words, std::string_view content) {
    if (words.size() != 3) fail(content, "expected 'index name value' in parameters block");
    parameters_[std::string(words[1])] = evaluate(words[2]);
  }

  void species(const std::vector<std::string_view>& words, std::string_view content) {
    if (words.size() != 3) fail(content, "expected 'index name concentration' in species block");
    const auto index = parse_index(words[0]);
    if (index != names_.size() + 1) fail(words[0], "species indices must be consecutive from 1");
    auto name = words[1];
    if (name.front() == '$') fail(name, "fixed species ('$') are not supported");
    if (!is_valid_species_name(name)) fail(name, "invalid species name '" + std::string(name) + "'");
    Rational conc = evaluate(words[2]);
    if (conc < 0) fail(words[2], "initial concentration must be nonnegative");
    names_.emplace_back(name);
    concentrations_.push_back(std::move(conc));
  }

  std::size_t parse_index(std::string_view token) const {
    if (token.empty() || token.size() > 9) fail(token, "invalid index '" + std::string(token) + "'");
    for (char c : token)
      if (!std::isdigit(static_cast<unsigned char>(c))) fail(token, "invalid index '" + std::string(token) + "'");
    return std::stoul(std::string(token));
  }

  Multiset species_list(std::string_view token) const {
    Multiset out;
    if (token == "0") return out;
    for (auto item : split_top_level(token, ',')) {
      const auto index = parse_index(item);
      if (index == 0 || index > names_.size())
        fail(item, "dangling species index " + std::string(item));
      out.add(static_cast<SpeciesId>(index - 1));
    }
    return out;
  }

  void reaction(const std::vector<std::string_view>& words, std::string_view content) {
    if (words.size() != 4) fail(content, "expected 'index reactants products rate' in reactions block");
    Reaction r;
    r.reactants = species_list(words[1]);
    r.products = species_list(words[2]);
    r.rate = evaluate(words[3]);
    if (r.rate <= 0) fail(words[3], "rate must be positive");
    if (r.reactants.size() == 0) fail(words[1], "reaction has no reactants");
    if (r.reactants.size() > 2) fail(words[1], "reactants exceed multiplicity 2");
    reactions_.push_back(std::move(r));
  }

  std::string_view text_;
  std::size_t line_no_ = 0;
  std::string_view line_;
  std::map<std::string, Rational> parameters_;
  std::vector<std::string> names_;
  std::vector<Rational> concentrations_;
  std::vector<Reaction> reactions_;
};

}  // namespace

std::vector<std::string_view> split_top_level(std::string_view text, char separator) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    else if (text[i] == ')') --depth;
    else if (text[i] == separator && depth == 0) {
      out.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  out.push_back(text.substr(start));
  return out;
}

Model parse_crn(std::string_view text, bool validate_reactions) {
  return NativeParser(text, validate_reactions).run();
}

std::string serialize_crn(const Model& model) {
  std::string out;
  for (const auto& c : model.comments) out += "# " + c + "\n";
  const Crn& crn = model.crn;
  out += "species:";
  for (const auto& n : crn.names()) out += " " + n;
  out += "\n";
  const Crn sorted = crn.sorted();
  for (const auto& r : sorted.reactions()) out += format_reaction(crn, r) + "\n";
  if (model.init) {
    for (SpeciesId s = 0; s < crn.species_count(); ++s)
      out += "init: " + crn.name(s) + " = " + format_rational(model.init->values.at(s)) + "\n";
  }
  for (const auto& block : model.blocks) {
    out += "block:";
    for (std::size_t i = 0; i < block.size(); ++i) out += (i ? ", " : " ") + block[i];
    out += "\n";
  }
  return out;
}

std::string serialize_crn(const Crn& crn) { return serialize_crn(Model{crn, std::nullopt, {}, {}}); }

Model import_bngl_net(std::string_view text) { return NetImporter(text).run(); }

Partition partition_from_names(const Crn& crn, const std::vector<std::vector<std::string>>& blocks) {
  std::vector<std::vector<SpeciesId>> ids;
  std::vector<bool> seen(crn.species_count(), false);
  for (const auto& block : blocks) {
    std::vector<SpeciesId> b;
    for (const auto& name : block) {
      auto id = crn.find(name);
      if (!id) throw Error(ErrorKind::Partition, "unknown species '" + name + "' in partition");
      if (seen[*id]) throw Error(ErrorKind::Partition, "species '" + name + "' appears in more than one block");
      seen[*id] = true;
      b.push_back(*id);
    }
    if (!b.empty()) ids.push_back(std::move(b));
  }
  std::vector<SpeciesId> rest;
  for (SpeciesId s = 0; s < crn.species_count(); ++s)
    if (!seen[s]) rest.push_back(s);
  if (!rest.empty()) ids.push_back(std::move(rest));
  return Partition(crn.species_count(), std::move(ids));
}

Partition parse_partition(std::string_view text, const Crn& crn) {
  std::vector<std::vector<std::string>> blocks;
  auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto content = trim(strip_comment(lines[i]));
    if (content.empty()) continue;
    std::vector<std::string> block;
    for (auto item : split_top_level(content, ',')) {
      auto name = trim(item);
      if (name.empty()) throw ParseError(i + 1, column_of(lines[i], item), "empty entry in block");
      block.emplace_back(name);
    }
    blocks.push_back(std::move(block));
  }
  return partition_from_names(crn, blocks);
}

std::string format_partition(const Crn& crn, const Partition& partition) {
  std::string out;
  for (const auto& block : partition.blocks()) {
    for (std::size_t i = 0; i < block.size(); ++i) {
      if (i) out += ", ";
      out += crn.name(block[i]);
    }
    out += "\n";
  }
  return out;
}

Partition partition_from_initial_conditions(const InitialCondition& v0) {
  std::map<Rational, std::uint32_t> label_of;
  std::vector<std::uint32_t> labels;
  labels.reserve(v0.values.size());
  for (const auto& v : v0.values) {
    auto [it, inserted] = label_of.try_emplace(v, static_cast<std::uint32_t>(label_of.size()));
    labels.push_back(it->second);
  }
  return Partition::from_labels(labels);
}

InitialCondition parse_initial_conditions(std::string_view text, const Crn& crn) {
  InitialCondition v0{std::vector<Rational>(crn.species_count(), Rational(0))};
  auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto content = trim(strip_comment(lines[i]));
    if (content.empty()) continue;
    std::string_view rest;
    if (starts_with_keyword(content, "init:", rest)) content = trim(rest);
    auto eq = content.find('=');
    if (eq == std::string_view::npos) throw ParseError(i + 1, 0, "expected 'X = value'");
    auto name = trim(content.substr(0, eq));
    auto value_text = trim(content.substr(eq + 1));
    auto id = crn.find(name);
    if (!id) throw ParseError(i + 1, column_of(lines[i], name), "unknown species '" + std::string(name) + "'");
    try {
      v0.values[*id] = parse_rational(value_text);
    } catch (const std::invalid_argument& e) {
      throw ParseError(i + 1, column_of(lines[i], value_text), e.what());
    }
    if (v0.values[*id] < 0)
      throw ParseError(i + 1, column_of(lines[i], value_text), "initial concentration must be nonnegative");
  }
  return v0;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path + "'");
  out << contents;
  if (!out) throw Error(ErrorKind::Io, "error writing '" + path + "'");
}

Model load_model(const std::string& path, bool validate_reactions) {
  const auto text = read_file(path);
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".net") return import_bngl_net(text);
  return parse_crn(text, validate_reactions);
}

}  // namespace crnb
