#include "ccoh/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ccoh {

namespace {

std::string trim(const std::string& s) {
  const auto from = s.find_first_not_of(" \t\r\n");
  if (from == std::string::npos) return "";
  const auto to = s.find_last_not_of(" \t\r\n");
  return s.substr(from, to - from + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

int parse_int(const std::string& s) {
  std::size_t used = 0;
  const int v = std::stoi(s, &used);
  if (used != s.size()) {
    throw std::invalid_argument("trailing characters in integer: " + s);
  }
  return v;
}

}  // namespace

ModuleDescriptor module_from_string(const std::string& text) {
  if (text == "trivial") return ModuleDescriptor::trivial();
  if (text.rfind("twisted:", 0) == 0) {
    const Rational a = rat_from_string(text.substr(8));
    return a == 0 ? ModuleDescriptor::trivial() : ModuleDescriptor::twisted(a);
  }
  if (text.rfind("natural:", 0) == 0) {
    const std::string rest = text.substr(8);
    const auto colon = rest.find(':');
    if (colon == std::string::npos) {
      throw std::invalid_argument("module syntax: natural:<N>:<alpha>");
    }
    int rank = 0;
    try {
      rank = parse_int(rest.substr(0, colon));
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed module rank: " +
                                  rest.substr(0, colon));
    }
    if (rank < 1) throw std::invalid_argument("module rank must be positive");
    return ModuleDescriptor::free_rank(rank,
                                       rat_from_string(rest.substr(colon + 1)));
  }
  throw std::invalid_argument(
      "unknown module `" + text +
      "` (expected trivial | twisted:<a> | natural:<N>:<alpha>)");
}

std::string write_cochain(const Cochain& c) {
  if (c.ordered) {
    throw std::invalid_argument("ordered assignments have no text form");
  }
  if (c.alg.kind != AlgebraKind::GcN) {
    throw std::invalid_argument("only gc_N cochains are serializable");
  }
  std::ostringstream out;
  out << c.q << ' ' << c.alg.N << ' ' << c.mod.to_string() << ' '
      << c.complete_to_level << '\n';
  for (const auto& [tuple, value] : c.values) {
    for (const GeneratorIndex& g : tuple) {
      out << generator_to_string(c.alg, g) << ' ';
    }
    out << ':';
    for (std::size_t i = 0; i < value.comps.size(); ++i) {
      if (i > 0) out << " ;";
      out << ' ' << value.comps[i].to_string();
    }
    out << '\n';
  }
  return out.str();
}

Cochain read_cochain(std::istream& in) {
  std::string line;
  int line_no = 0;
  const auto fail = [&line_no](const std::string& msg) {
    return std::runtime_error("line " + std::to_string(line_no) + ": " + msg);
  };
  const auto next_content_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      line = trim(line);
      if (!line.empty() && line[0] != '#') return true;
    }
    return false;
  };

  if (!next_content_line()) {
    ++line_no;  // report the position where the header was expected
    throw fail("missing header `q N module levelbound`");
  }
  std::istringstream header(line);
  int q = 0;
  int n_alg = 0;
  int bound = 0;
  std::string module_text;
  std::string excess;
  if (!(header >> q >> n_alg >> module_text >> bound) || (header >> excess)) {
    throw fail("expected header `q N module levelbound`");
  }
  if (q < 0) throw fail("negative cochain degree");
  if (n_alg < 1) throw fail("algebra size must be at least one");
  if (bound < -1) throw fail("level bound must be -1 or nonnegative");
  ModuleDescriptor mod;
  try {
    mod = module_from_string(module_text);
  } catch (const std::invalid_argument& e) {
    throw fail(e.what());
  }
  if (mod.kind == ModuleKind::FreeRank && mod.N != n_alg) {
    throw fail("module rank must match the algebra size");
  }

  Cochain c(q, AlgebraDescriptor::gc(n_alg), mod);
  c.complete_to_level = bound;
  std::set<VarId> allowed = lambda_set(q);
  if (!mod.is_scalar()) allowed.insert(kPartial);

  while (next_content_line()) {
    const auto colon = line.find(':');
    if (colon == std::string::npos) {
      throw fail("expected `generators : value`");
    }
    TupleKey tuple;
    {
      std::istringstream gens(line.substr(0, colon));
      std::string token;
      while (gens >> token) {
        try {
          tuple.push_back(generator_from_string(c.alg, token));
        } catch (const std::exception& e) {
          throw fail(e.what());
        }
      }
    }
    if (static_cast<int>(tuple.size()) != q) {
      throw fail("expected " + std::to_string(q) + " generator(s), got " +
                 std::to_string(tuple.size()));
    }
    if (!tuple_is_canonical(tuple)) {
      throw fail("tuple is not in canonical order");
    }
    if (bound >= 0 && tuple_level(tuple) > bound) {
      throw fail("tuple level exceeds the header level bound");
    }
    const std::vector<std::string> parts = split(line.substr(colon + 1), ';');
    if (static_cast<int>(parts.size()) != mod.dimension()) {
      throw fail("expected " + std::to_string(mod.dimension()) +
                 " value component(s), got " + std::to_string(parts.size()));
    }
    ModuleElement value(mod.dimension());
    for (std::size_t i = 0; i < parts.size(); ++i) {
      try {
        value.comps[i] = parse_poly(parts[i]);
      } catch (const std::exception& e) {
        throw fail(e.what());
      }
      for (const auto& [mono, coeff] : value.comps[i].terms()) {
        for (const auto& [var, exp] : mono.factors()) {
          if (allowed.count(var) == 0) {
            throw fail("variable " + var_name(var) +
                       " is not available in this cochain");
          }
        }
      }
    }
    c.add_value(tuple, value);
  }
  c.symmetrize();
  c.normalize();
  return c;
}

Cochain parse_cochain(const std::string& text) {
  std::istringstream in(text);
  return read_cochain(in);
}

Cochain load_cochain_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open file");
  try {
    return read_cochain(in);
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

}  // namespace ccoh
