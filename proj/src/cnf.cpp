#include "cnfscope/cnf.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>
#include <deque>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>
#include <random>
#include <sstream>

namespace cnfscope {

std::size_t CnfFormula::num_literals() const {
  std::size_t total = 0;
  for (const auto &c : clauses)
    total += c.size();
  return total;
}

bool normalize_clause(Clause &clause) {
  Clause out;
  out.reserve(clause.size());
  bool tautology = false;
  for (Literal lit : clause) {
    bool seen = false;
    for (Literal kept : out) {
      if (kept == lit) {
        seen = true;
        break;
      }
      if (kept == -lit)
        tautology = true;
    }
    if (!seen)
      out.push_back(lit);
  }
  clause = std::move(out);
  return tautology;
}

bool is_tautology(const Clause &clause) {
  for (std::size_t i = 0; i < clause.size(); ++i)
    for (std::size_t j = i + 1; j < clause.size(); ++j)
      if (clause[i] == -clause[j])
        return true;
  return false;
}

void validate(const CnfFormula &f) {
  if (f.num_vars < 0)
    throw std::invalid_argument("negative variable count");
  for (std::size_t i = 0; i < f.clauses.size(); ++i)
    for (Literal lit : f.clauses[i])
      if (lit == 0 || var_of(lit) > f.num_vars)
        throw std::invalid_argument("clause " + std::to_string(i) +
                                    ": literal " + std::to_string(lit) +
                                    " out of range");
}

namespace {

bool parse_int(std::string_view token, long long &value) {
  if (!token.empty() && token.front() == '+')
    token.remove_prefix(1);
  auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  return ec == std::errc() && ptr == token.data() + token.size();
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])))
      ++j;
    if (j > i)
      tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

} // namespace

ParseResult parse_dimacs(std::string_view text) {
  ParseResult result;
  auto &f = result.formula;
  bool have_header = false;
  long long declared_clauses = 0;
  Clause current;
  std::size_t line_no = 0;

  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos)
      end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r')
      line.remove_suffix(1);

    auto tokens = split_ws(line);
    if (tokens.empty())
      continue;
    if (tokens[0].front() == 'c')
      continue;
    if (tokens[0] == "%") // SATLIB trailer
      break;
    if (tokens[0] == "p") {
      if (have_header)
        throw ParseError(line_no, "duplicate header");
      long long n = 0, m = 0;
      if (tokens.size() != 4 || tokens[1] != "cnf" || !parse_int(tokens[2], n) ||
          !parse_int(tokens[3], m) || n < 0 || m < 0 ||
          n > std::numeric_limits<int>::max())
        throw ParseError(line_no, "malformed header, expected 'p cnf <n> <m>'");
      f.num_vars = static_cast<int>(n);
      declared_clauses = m;
      have_header = true;
      continue;
    }
    if (!have_header)
      throw ParseError(line_no, "clause data before 'p cnf' header");

    for (auto token : tokens) {
      long long value = 0;
      if (!parse_int(token, value))
        throw ParseError(line_no, "invalid literal '" + std::string(token) + "'");
      if (value == 0) {
        std::size_t before = current.size();
        bool taut = normalize_clause(current);
        if (current.size() != before) {
          result.warnings.push_back("line " + std::to_string(line_no) +
                                    ": duplicate literal collapsed in clause " +
                                    std::to_string(f.clauses.size() + 1));
        }
        if (taut) {
          result.warnings.push_back("line " + std::to_string(line_no) +
                                    ": tautological clause " +
                                    std::to_string(f.clauses.size() + 1));
        }
        f.clauses.push_back(std::move(current));
        current.clear();
        continue;
      }
      if (value < -f.num_vars || value > f.num_vars)
        throw ParseError(line_no, "literal " + std::string(token) +
                                      " out of range for " +
                                      std::to_string(f.num_vars) + " variables");
      current.push_back(static_cast<Literal>(value));
    }
  }

  if (!have_header)
    throw ParseError(line_no, "missing 'p cnf' header");
  if (!current.empty())
    throw ParseError(line_no, "last clause not terminated by 0");
  if (static_cast<long long>(f.clauses.size()) != declared_clauses)
    result.warnings.push_back("header declares " + std::to_string(declared_clauses) +
                              " clauses, found " + std::to_string(f.clauses.size()));
  return result;
}

ParseResult parse_dimacs(std::istream &in) {
  std::string text{std::istreambuf_iterator<char>(in),
                   std::istreambuf_iterator<char>()};
  return parse_dimacs(std::string_view(text));
}

ParseResult read_dimacs_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot open " + path);
  return parse_dimacs(in);
}

void write_dimacs(const CnfFormula &f, std::ostream &out) {
  out << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
  for (const auto &c : f.clauses) {
    for (Literal lit : c)
      out << lit << ' ';
    out << "0\n";
  }
}

std::string to_dimacs(const CnfFormula &f) {
  std::ostringstream out;
  write_dimacs(f, out);
  return out.str();
}

namespace {

// Distinct variables drawn uniformly without replacement, uniform signs.
Clause random_clause(int n, std::size_t size, std::mt19937_64 &rng) {
  std::uniform_int_distribution<int> pick(1, n);
  std::bernoulli_distribution sign(0.5);
  Clause clause;
  clause.reserve(size);
  if (size * 2 <= static_cast<std::size_t>(n)) {
    while (clause.size() < size) {
      int v = pick(rng);
      bool fresh = std::none_of(clause.begin(), clause.end(),
                                [v](Literal l) { return var_of(l) == v; });
      if (fresh)
        clause.push_back(v);
    }
  } else {
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i)
      pool[i] = i + 1;
    for (std::size_t i = 0; i < size; ++i) {
      std::uniform_int_distribution<std::size_t> d(i, pool.size() - 1);
      std::swap(pool[i], pool[d(rng)]);
      clause.push_back(pool[i]);
    }
  }
  for (auto &lit : clause)
    if (sign(rng))
      lit = -lit;
  return clause;
}

} // namespace

CnfFormula random_3cnf(int n, std::size_t m, std::uint64_t seed) {
  if (n < 3)
    throw std::invalid_argument("random 3-CNF needs at least 3 variables");
  std::mt19937_64 rng(seed);
  CnfFormula f;
  f.num_vars = n;
  f.clauses.reserve(m);
  for (std::size_t i = 0; i < m; ++i)
    f.clauses.push_back(random_clause(n, 3, rng));
  return f;
}

PropagationResult unit_propagate(const CnfFormula &f) {
  validate(f);
  PropagationResult res;
  const int n = f.num_vars;
  const std::size_t m = f.clauses.size();

  // occurrences indexed by literal: lit > 0 -> 2v, lit < 0 -> 2v+1
  auto index = [](Literal lit) {
    return static_cast<std::size_t>(2 * var_of(lit) + (lit < 0 ? 1 : 0));
  };
  std::vector<std::vector<std::uint32_t>> occurs(2 * static_cast<std::size_t>(n) + 2);
  std::vector<std::uint32_t> open(m);
  std::vector<char> satisfied(m, 0);
  std::vector<signed char> value(static_cast<std::size_t>(n) + 1, 0);
  std::deque<Literal> queue;

  auto enqueue = [&](Literal lit) -> bool {
    signed char want = lit > 0 ? 1 : -1;
    signed char &cur = value[var_of(lit)];
    if (cur == want)
      return true;
    if (cur == -want)
      return false;
    cur = want;
    queue.push_back(lit);
    return true;
  };

  for (std::size_t i = 0; i < m; ++i) {
    const auto &c = f.clauses[i];
    open[i] = static_cast<std::uint32_t>(c.size());
    for (Literal lit : c)
      occurs[index(lit)].push_back(static_cast<std::uint32_t>(i));
  }
  for (std::size_t i = 0; i < m; ++i) {
    const auto &c = f.clauses[i];
    if (c.empty()) {
      res.conflict = 0;
      return res;
    }
    if (c.size() == 1 && !enqueue(c[0])) {
      res.conflict = var_of(c[0]);
      return res;
    }
  }

  while (!queue.empty()) {
    Literal lit = queue.front();
    queue.pop_front();
    for (auto ci : occurs[index(lit)])
      satisfied[ci] = 1;
    for (auto ci : occurs[index(-lit)]) {
      if (satisfied[ci])
        continue;
      if (--open[ci] == 0) {
        res.conflict = var_of(lit);
        return res;
      }
      if (open[ci] == 1) {
        // locate the remaining unassigned literal
        for (Literal other : f.clauses[ci]) {
          signed char v = value[var_of(other)];
          if (v == 0) {
            if (!enqueue(other)) {
              res.conflict = var_of(other);
              return res;
            }
            break;
          }
          if ((v > 0) == (other > 0)) { // already true
            satisfied[ci] = 1;
            break;
          }
        }
      }
    }
  }

  res.formula.num_vars = n;
  for (std::size_t i = 0; i < m; ++i) {
    if (satisfied[i])
      continue;
    Clause reduced;
    bool sat = false;
    for (Literal lit : f.clauses[i]) {
      signed char v = value[var_of(lit)];
      if (v == 0)
        reduced.push_back(lit);
      else if ((v > 0) == (lit > 0))
        sat = true;
    }
    if (!sat)
      res.formula.clauses.push_back(std::move(reduced));
  }
  for (int v = 1; v <= n; ++v)
    if (value[v] != 0)
      res.assignment[v] = value[v] > 0;
  return res;
}

CnfFormula drop_assigned(const CnfFormula &f, const Assignment &assignment) {
  std::vector<int> renumber(static_cast<std::size_t>(f.num_vars) + 1, 0);
  int next = 0;
  for (int v = 1; v <= f.num_vars; ++v)
    if (!assignment.contains(v))
      renumber[v] = ++next;
  CnfFormula out;
  out.num_vars = next;
  out.clauses.reserve(f.clauses.size());
  for (const auto &c : f.clauses) {
    Clause mapped;
    mapped.reserve(c.size());
    for (Literal lit : c) {
      int nv = renumber[var_of(lit)];
      if (nv == 0)
        throw std::invalid_argument("clause mentions assigned variable " +
                                    std::to_string(var_of(lit)));
      mapped.push_back(lit < 0 ? -nv : nv);
    }
    out.clauses.push_back(std::move(mapped));
  }
  return out;
}

CnfFormula canonicalize(const CnfFormula &f) {
  CnfFormula out = f;
  auto by_var = [](Literal a, Literal b) {
    return std::pair(var_of(a), a > 0) < std::pair(var_of(b), b > 0);
  };
  for (auto &c : out.clauses)
    std::sort(c.begin(), c.end(), by_var);
  std::sort(out.clauses.begin(), out.clauses.end());
  return out;
}

const ClauseTrace::Checkpoint *ClauseTrace::find(std::int64_t decisions) const {
  for (const auto &cp : checkpoints)
    if (cp.decisions == decisions)
      return &cp;
  return nullptr;
}

ClauseTrace parse_trace(std::string_view text) {
  ClauseTrace trace;
  Clause current;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos)
      end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r')
      line.remove_suffix(1);
    auto tokens = split_ws(line);
    if (tokens.empty() || tokens[0].front() == 'c')
      continue;
    if (tokens[0] == "t") {
      long long k = 0;
      if (tokens.size() != 2 || !parse_int(tokens[1], k) || k < 0)
        throw ParseError(line_no, "malformed checkpoint line, expected 't <decisions>'");
      if (!current.empty())
        throw ParseError(line_no, "clause not terminated by 0 before checkpoint");
      if (!trace.checkpoints.empty() && k <= trace.checkpoints.back().decisions)
        throw ParseError(line_no, "checkpoint decision counts must increase");
      trace.checkpoints.push_back({k, {}});
      continue;
    }
    if (trace.checkpoints.empty())
      throw ParseError(line_no, "clause before first checkpoint");
    for (auto token : tokens) {
      long long value = 0;
      if (!parse_int(token, value) || value < std::numeric_limits<int>::min() + 1 ||
          value > std::numeric_limits<int>::max())
        throw ParseError(line_no, "invalid literal '" + std::string(token) + "'");
      if (value == 0) {
        normalize_clause(current);
        trace.checkpoints.back().learnt.push_back(std::move(current));
        current.clear();
      } else {
        current.push_back(static_cast<Literal>(value));
      }
    }
  }
  if (!current.empty())
    throw ParseError(line_no, "last clause not terminated by 0");
  return trace;
}

ClauseTrace parse_trace(std::istream &in) {
  std::string text{std::istreambuf_iterator<char>(in),
                   std::istreambuf_iterator<char>()};
  return parse_trace(std::string_view(text));
}

void write_trace(const ClauseTrace &trace, std::ostream &out) {
  for (const auto &cp : trace.checkpoints) {
    out << "t " << cp.decisions << '\n';
    for (const auto &c : cp.learnt) {
      for (Literal lit : c)
        out << lit << ' ';
      out << "0\n";
    }
  }
}

namespace {

const ClauseTrace::Checkpoint &require_checkpoint(const ClauseTrace &trace,
                                                  std::int64_t checkpoint) {
  const auto *cp = trace.find(checkpoint);
  if (!cp)
    throw std::out_of_range("checkpoint " + std::to_string(checkpoint) +
                            " not present in trace");
  return *cp;
}

} // namespace

PropagationResult augment_with_learnt(const CnfFormula &f,
                                      const ClauseTrace &trace,
                                      std::int64_t checkpoint) {
  const auto &cp = require_checkpoint(trace, checkpoint);
  CnfFormula augmented = f;
  for (Clause c : cp.learnt) {
    normalize_clause(c);
    augmented.clauses.push_back(std::move(c));
  }
  return unit_propagate(augmented);
}

PropagationResult random_replacement(const CnfFormula &f,
                                     const ClauseTrace &trace,
                                     std::int64_t checkpoint,
                                     std::uint64_t seed) {
  const auto &cp = require_checkpoint(trace, checkpoint);
  for (const auto &c : cp.learnt)
    if (c.size() > static_cast<std::size_t>(f.num_vars))
      throw std::invalid_argument("learnt clause of size " + std::to_string(c.size()) +
                                  " exceeds " + std::to_string(f.num_vars) +
                                  " variables");
  std::mt19937_64 rng(seed);
  CnfFormula augmented = f;
  for (const auto &c : cp.learnt)
    augmented.clauses.push_back(random_clause(f.num_vars, c.size(), rng));
  return unit_propagate(augmented);
}

} // namespace cnfscope
