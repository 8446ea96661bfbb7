#include "skm/model_parser.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace skm {

namespace {

struct Cursor {
  const std::string& s;
  int line;
  size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= s.size();
  }
  int col() const { return static_cast<int>(pos) + 1; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line, col());
  }
};

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::string read_ident(Cursor& c) {
  c.skip_ws();
  size_t start = c.pos;
  while (c.pos < c.s.size() && ident_char(c.s[c.pos])) ++c.pos;
  if (c.pos == start) c.fail("expected identifier");
  return c.s.substr(start, c.pos - start);
}

// expr := term (('+'|'-') term)* ; term := factor (('*'|'/') factor)*
// factor := number | symbol | '(' expr ')' | '-' factor
double parse_expr(Cursor& c, const std::map<std::string, double>& symbols);

double parse_factor(Cursor& c, const std::map<std::string, double>& symbols) {
  c.skip_ws();
  if (c.pos >= c.s.size()) c.fail("expected value");
  char ch = c.s[c.pos];
  if (ch == '-') {
    ++c.pos;
    return -parse_factor(c, symbols);
  }
  if (ch == '(') {
    ++c.pos;
    double v = parse_expr(c, symbols);
    c.skip_ws();
    if (c.pos >= c.s.size() || c.s[c.pos] != ')') c.fail("expected ')'");
    ++c.pos;
    return v;
  }
  if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
    size_t consumed = 0;
    double v;
    try {
      v = std::stod(c.s.substr(c.pos), &consumed);
    } catch (const std::exception&) {
      c.fail("malformed number");
    }
    c.pos += consumed;
    return v;
  }
  if (ident_char(ch)) {
    const int col = c.col();
    std::string name = read_ident(c);
    auto it = symbols.find(name);
    if (it == symbols.end())
      throw ParseError("unbound parameter symbol '" + name + "'", c.line, col);
    return it->second;
  }
  c.fail("unexpected character in expression");
}

double parse_term(Cursor& c, const std::map<std::string, double>& symbols) {
  double v = parse_factor(c, symbols);
  for (;;) {
    c.skip_ws();
    if (c.pos < c.s.size() && (c.s[c.pos] == '*' || c.s[c.pos] == '/')) {
      char op = c.s[c.pos++];
      double rhs = parse_factor(c, symbols);
      v = (op == '*') ? v * rhs : v / rhs;
    } else {
      return v;
    }
  }
}

double parse_expr(Cursor& c, const std::map<std::string, double>& symbols) {
  double v = parse_term(c, symbols);
  for (;;) {
    c.skip_ws();
    if (c.pos < c.s.size() && (c.s[c.pos] == '+' || c.s[c.pos] == '-')) {
      char op = c.s[c.pos++];
      double rhs = parse_term(c, symbols);
      v = (op == '+') ? v + rhs : v - rhs;
    } else {
      return v;
    }
  }
}

struct RawReaction {
  std::vector<std::pair<std::string, int>> lhs, rhs;  // (species, coeff)
  std::string rate_name;
  int line;
};

// side := '0' | term ('+' term)* ; term := [int] species
std::vector<std::pair<std::string, int>> parse_side(Cursor& c, bool& empty_ok) {
  std::vector<std::pair<std::string, int>> terms;
  c.skip_ws();
  if (c.pos < c.s.size() && c.s[c.pos] == '0' &&
      (c.pos + 1 >= c.s.size() || !ident_char(c.s[c.pos + 1]))) {
    ++c.pos;
    empty_ok = true;
    return terms;
  }
  for (;;) {
    c.skip_ws();
    int coeff = 1;
    if (c.pos < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.pos]))) {
      size_t consumed = 0;
      coeff = std::stoi(c.s.substr(c.pos), &consumed);
      c.pos += consumed;
      if (coeff < 1) c.fail("stoichiometric coefficient must be positive");
    }
    std::string name = read_ident(c);
    terms.emplace_back(name, coeff);
    c.skip_ws();
    if (c.pos < c.s.size() && c.s[c.pos] == '+') {
      ++c.pos;
      continue;
    }
    break;
  }
  empty_ok = true;
  return terms;
}

}  // namespace

ParsedModel parse_model(const std::string& text,
                        const std::map<std::string, double>& symbols) {
  std::vector<std::string> species;
  std::map<std::string, int> species_index;
  std::vector<RawReaction> reactions;
  std::map<std::string, double> params;
  std::vector<double> init;
  bool have_init = false;
  ObservationModel obs;

  enum class Section { None, Species, Reactions, Params };
  Section section = Section::None;

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    // strip comments
    const size_t hash = raw.find('#');
    std::string content = hash == std::string::npos ? raw : raw.substr(0, hash);
    Cursor c{content, line_no};
    if (c.done()) continue;

    // section header or init/obs line?
    const size_t save = c.pos;
    std::string head;
    if (ident_char(content[c.pos])) head = read_ident(c);
    c.skip_ws();
    const bool has_colon = c.pos < content.size() && content[c.pos] == ':';
    const bool has_eq = c.pos < content.size() && content[c.pos] == '=';

    if (head == "species" && has_colon) {
      ++c.pos;
      section = Section::Species;
      while (!c.done()) {
        std::string name = read_ident(c);
        if (species_index.count(name))
          throw ParseError("duplicate species '" + name + "'", line_no, c.col());
        species_index[name] = static_cast<int>(species.size());
        species.push_back(name);
      }
      continue;
    }
    if (head == "reactions" && has_colon) {
      ++c.pos;
      section = Section::Reactions;
      if (!c.done()) c.fail("reactions must start on the following lines");
      continue;
    }
    if (head == "params" && has_colon) {
      ++c.pos;
      section = Section::Params;
      if (!c.done()) c.fail("params must start on the following lines");
      continue;
    }
    if (head == "init" && (has_colon || has_eq)) {
      ++c.pos;
      c.skip_ws();
      bool parens = c.pos < content.size() && content[c.pos] == '(';
      if (parens) ++c.pos;
      init.clear();
      for (;;) {
        c.skip_ws();
        if (c.pos >= content.size()) break;
        if (content[c.pos] == ')') {
          ++c.pos;
          break;
        }
        if (content[c.pos] == ',') {
          ++c.pos;
          continue;
        }
        size_t consumed = 0;
        double v;
        try {
          v = std::stod(content.substr(c.pos), &consumed);
        } catch (const std::exception&) {
          c.fail("malformed initial value");
        }
        c.pos += consumed;
        if (v < 0 || v != std::floor(v)) c.fail("initial state must be nonnegative integers");
        init.push_back(v);
      }
      have_init = true;
      section = Section::None;
      continue;
    }
    if (head == "obs" && has_colon) {
      ++c.pos;
      c.skip_ws();
      size_t start = c.pos;
      while (c.pos < content.size() &&
             !std::isspace(static_cast<unsigned char>(content[c.pos])))
        ++c.pos;
      std::string name = content.substr(start, c.pos - start);
      if (name != "poisson-bern" && name != "poisson_bern")
        c.fail("unknown observation model '" + name + "'");
      if (!c.done()) {
        double p = parse_expr(c, symbols);
        if (!(p > 0.0 && p < 1.0)) c.fail("observation Bernoulli parameter outside (0,1)");
        obs.bern_p = p;
      }
      section = Section::None;
      continue;
    }

    // content line within the current section
    c.pos = save;
    switch (section) {
      case Section::Species: {
        while (!c.done()) {
          std::string name = read_ident(c);
          if (species_index.count(name))
            throw ParseError("duplicate species '" + name + "'", line_no, c.col());
          species_index[name] = static_cast<int>(species.size());
          species.push_back(name);
        }
        break;
      }
      case Section::Reactions: {
        RawReaction rx;
        rx.line = line_no;
        bool ok = true;
        rx.lhs = parse_side(c, ok);
        c.skip_ws();
        if (c.pos + 1 >= content.size() || content[c.pos] != '-' ||
            content[c.pos + 1] != '>')
          c.fail("expected '->'");
        c.pos += 2;
        rx.rhs = parse_side(c, ok);
        c.skip_ws();
        if (c.pos >= content.size() || content[c.pos] != '@')
          c.fail("expected '@ rate-name'");
        ++c.pos;
        rx.rate_name = read_ident(c);
        if (!c.done()) c.fail("trailing characters after reaction");
        reactions.push_back(std::move(rx));
        break;
      }
      case Section::Params: {
        std::string name = read_ident(c);
        c.skip_ws();
        if (c.pos >= content.size() || content[c.pos] != '=') c.fail("expected '='");
        ++c.pos;
        double v = parse_expr(c, symbols);
        if (!c.done()) c.fail("trailing characters after parameter value");
        params[name] = v;
        break;
      }
      case Section::None:
        c.fail("content outside any section");
    }
  }

  if (species.empty()) throw ParseError("no species declared", line_no, 1);
  if (reactions.empty()) throw ParseError("no reactions declared", line_no, 1);

  const int k = static_cast<int>(species.size());
  const int r = static_cast<int>(reactions.size());
  IMat u = IMat::Zero(r, k), v = IMat::Zero(r, k);
  Vec c_vals(r);
  std::vector<std::string> rate_names;
  std::map<std::string, int> seen_names;
  for (int i = 0; i < r; ++i) {
    const auto& rx = reactions[i];
    if (seen_names.count(rx.rate_name))
      throw ParseError("duplicate reaction name '" + rx.rate_name + "'", rx.line, 1);
    seen_names[rx.rate_name] = i;
    int order = 0;
    for (const auto& [name, coeff] : rx.lhs) {
      auto it = species_index.find(name);
      if (it == species_index.end())
        throw ParseError("unknown species '" + name + "'", rx.line, 1);
      u(i, it->second) += coeff;
      order += coeff;
    }
    if (order > 2)
      throw ParseError("reaction '" + rx.rate_name + "' has order " +
                           std::to_string(order) +
                           "; at most two reactant molecules are supported",
                       rx.line, 1);
    for (const auto& [name, coeff] : rx.rhs) {
      auto it = species_index.find(name);
      if (it == species_index.end())
        throw ParseError("unknown species '" + name + "'", rx.line, 1);
      v(i, it->second) += coeff;
    }
    auto pit = params.find(rx.rate_name);
    if (pit == params.end())
      throw ParseError("unbound parameter '" + rx.rate_name + "'", rx.line, 1);
    if (!(pit->second > 0.0))
      throw ParseError("rate '" + rx.rate_name + "' must be positive", rx.line, 1);
    c_vals[i] = pit->second;
    rate_names.push_back(rx.rate_name);
  }

  ParsedModel model;
  try {
    model.network = ReactionNetwork::create(species, u, v, c_vals);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), line_no, 1);
  }
  model.rate_names = std::move(rate_names);
  model.obs = obs;
  if (have_init) {
    if (static_cast<int>(init.size()) != k)
      throw ParseError("init length does not match species count", line_no, 1);
    model.x0 = Eigen::Map<const Vec>(init.data(), k);
  } else {
    model.x0 = Vec::Zero(k);
  }
  return model;
}

ParsedModel parse_model_file(const std::string& path,
                             const std::map<std::string, double>& symbols) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open model file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_model(ss.str(), symbols);
}

std::string serialize_model(const ParsedModel& model) {
  const auto& net = model.network;
  std::ostringstream out;
  out << "species:";
  for (const auto& s : net.species_names()) out << " " << s;
  out << "\nreactions:\n";
  auto side = [&](const IMat& m, int i) {
    std::string s;
    bool first = true;
    for (int j = 0; j < m.cols(); ++j) {
      if (m(i, j) == 0) continue;
      if (!first) s += " + ";
      if (m(i, j) > 1) s += std::to_string(m(i, j)) + " ";
      s += net.species_names()[j];
      first = false;
    }
    return first ? std::string("0") : s;
  };
  for (int i = 0; i < net.num_reactions(); ++i)
    out << "  " << side(net.reactant_stoich(), i) << " -> "
        << side(net.product_stoich(), i) << " @ " << model.rate_names[i] << "\n";
  out << "params:\n";
  char buf[64];
  for (int i = 0; i < net.num_reactions(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", net.rate_constants()[i]);
    out << "  " << model.rate_names[i] << " = " << buf << "\n";
  }
  out << "init = (";
  for (int j = 0; j < model.x0.size(); ++j) {
    if (j) out << ", ";
    out << static_cast<long>(model.x0[j]);
  }
  out << ")\n";
  std::snprintf(buf, sizeof buf, "%.17g", model.obs.bern_p);
  out << "obs: poisson-bern " << buf << "\n";
  return out.str();
}

}  // namespace skm
