#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cnfscope {

using Literal = int;
using Clause = std::vector<Literal>;

inline int var_of(Literal lit) { return lit < 0 ? -lit : lit; }

/// A CNF formula over variables 1..num_vars.
struct CnfFormula {
  int num_vars = 0;
  std::vector<Clause> clauses;

  std::size_t num_clauses() const { return clauses.size(); }
  /// Total number of literal occurrences.
  std::size_t num_literals() const;

  bool operator==(const CnfFormula &) const = default;
};

/// Variable -> value. Ordered so that dumps are deterministic.
using Assignment = std::map<int, bool>;

class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, const std::string &what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

struct ParseResult {
  CnfFormula formula;
  std::vector<std::string> warnings;
};

/// Reads DIMACS CNF. Duplicate literals inside a clause are collapsed,
/// tautologies are kept and reported, and the actual clause count wins over
/// the declared one.
ParseResult parse_dimacs(std::istream &in);
ParseResult parse_dimacs(std::string_view text);
ParseResult read_dimacs_file(const std::string &path);

void write_dimacs(const CnfFormula &f, std::ostream &out);
std::string to_dimacs(const CnfFormula &f);

/// Removes repeated literals, keeping first occurrences in order. Returns
/// true when the clause contains both polarities of some variable.
bool normalize_clause(Clause &clause);
bool is_tautology(const Clause &clause);

/// Checks literal bounds; throws std::invalid_argument otherwise.
void validate(const CnfFormula &f);

/// Uniform random 3-CNF: three distinct variables per clause, independent
/// uniform signs. Deterministic per seed.
CnfFormula random_3cnf(int n, std::size_t m, std::uint64_t seed);

struct PropagationResult {
  CnfFormula formula;
  Assignment assignment;
  /// Set when an empty clause was derived; holds the variable whose
  /// assignment falsified it (0 if the input already had an empty clause).
  std::optional<int> conflict;

  bool ok() const { return !conflict.has_value(); }
};

/// Unit propagation to fixpoint. Satisfied clauses are dropped and falsified
/// literals removed; the result contains no unit clauses.
PropagationResult unit_propagate(const CnfFormula &f);

/// Drops the assigned variables and renumbers the rest densely, preserving
/// relative order.
CnfFormula drop_assigned(const CnfFormula &f, const Assignment &assignment);

/// Sorts literals inside each clause by variable, then sorts the clause list.
CnfFormula canonicalize(const CnfFormula &f);

/// Learnt clauses dumped by an instrumented solver at decision checkpoints.
struct ClauseTrace {
  struct Checkpoint {
    std::int64_t decisions = 0;
    std::vector<Clause> learnt;
  };
  std::vector<Checkpoint> checkpoints;

  const Checkpoint *find(std::int64_t decisions) const;
};

/// Format: `t <decisions>` opens a checkpoint, followed by clause lines
/// terminated by 0. Lines starting with `c` are comments.
ClauseTrace parse_trace(std::istream &in);
ClauseTrace parse_trace(std::string_view text);
void write_trace(const ClauseTrace &trace, std::ostream &out);

/// Original formula plus the learnt clauses of one checkpoint, propagated.
/// Throws std::out_of_range for an unknown checkpoint.
PropagationResult augment_with_learnt(const CnfFormula &f,
                                      const ClauseTrace &trace,
                                      std::int64_t checkpoint);

/// As augment_with_learnt, but each learnt clause of size s is replaced by a
/// uniformly random clause of size s over distinct variables.
PropagationResult random_replacement(const CnfFormula &f,
                                     const ClauseTrace &trace,
                                     std::int64_t checkpoint,
                                     std::uint64_t seed);

} // namespace cnfscope
