#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ffa/normalizer.hpp"
#include "ffa/smtlib/sort_check.hpp"
#include "ffa/solver.hpp"

namespace ffa {

struct ExternalSolverConfig {
  std::string label;
  /// argv template; exactly one element is the literal "{file}" and is
  /// replaced by the script path at launch.
  std::vector<std::string> command;
  double timeout_sec = 10.0;
};

/// Parses a "LABEL=CMD ARG..." spec. The command is whitespace-split; when
/// no argument is the {file} placeholder one is appended, more than one is
/// rejected (InvalidInputError, as are an empty label or command).
ExternalSolverConfig parse_solver_spec(const std::string& spec,
                                       double timeout_sec);

/// Resolves an executable: names containing '/' are checked directly,
/// others searched along PATH. Empty when nothing executable is found.
std::optional<std::string> find_on_path(const std::string& name);

enum class ExternalStatus {
  Answered,     // first output line was sat, unsat, or unknown
  SpawnFailed,  // exec failed (missing or non-executable binary)
  TimedOut,     // killed at the deadline
  Garbage,      // ran to completion without a recognizable verdict line
};

struct ExternalResult {
  ExternalStatus status;
  std::string verdict;     // Answered only
  std::string model_text;  // Answered only: stdout after the verdict line
  std::string detail;      // diagnostic for the other statuses
};

/// Runs the configured command on a script file, capturing stdout, and
/// parses the first non-blank line as the verdict. The subprocess is killed
/// at cfg.timeout_sec. Never throws for subprocess misbehavior; the status
/// carries it.
ExternalResult run_external(const ExternalSolverConfig& cfg,
                            const std::string& script_path);

struct ModelCheck {
  /// Well-formed define-fun block binding exactly the script's declared
  /// constants, each to an element of its declared sort, under which every
  /// assertion evaluates true.
  bool valid = false;
  /// All values spelled as canonical indexed literals ((_ ffV p ...) with
  /// the symmetric representative and no trailing zero coefficients).
  bool normalized = true;
  std::string detail;  // first problem found
  std::optional<Model> model;
};

/// Checks a model block printed by another solver against the script it
/// answers. The block is `(...)` of define-fun entries, optionally headed by
/// the symbol `model`; sort aliases from the script are honored. Missing,
/// duplicate, or undeclared constants, sort mismatches, non-literal values,
/// and falsified assertions all make it invalid; values in annotated or
/// non-canonical spellings are valid but flagged as not normalized. The
/// assertions are re-evaluated here, never trusted.
ModelCheck validate_external_model(const std::string& model_text,
                                   const smtlib::TypedScript& script);

enum class DiffClass {
  Agree,
  AgreeVacuous,  // either side answered unknown
  VerdictMismatch,
  ModelInvalid,
  NormalizationWarning,
  ExternalError,
  Timeout,
  Skipped,
};

std::string to_string(DiffClass c);

struct DiffRecord {
  std::string label;
  std::string script;  // file path, or "seed:N" for generated inputs
  std::optional<unsigned long> seed;
  std::string internal_verdict;
  std::string external_verdict;  // "none" when the counterpart gave none
  DiffClass klass = DiffClass::Skipped;
  std::string detail;
};

struct DiffOptions {
  SolverConfig solver;
  /// Compare the pruned search against the naive reference enumeration
  /// instead of an external solver.
  bool internal_only = false;
};

/// One differential run. The script is checked and solved internally, then
/// the counterpart answers: the naive enumeration when opts.internal_only,
/// otherwise the external solver (which, on sat, is rerun with (get-model)
/// appended and must produce a model that validates here). Verdicts of
/// unknown on either side classify as agree-vacuous; a missing executable
/// classifies as skipped.
DiffRecord diff_one(const std::string& script_text,
                    const std::string& script_name,
                    std::optional<unsigned long> seed,
                    smtlib::SortBuilder& sorts, const DiffOptions& opts,
                    const ExternalSolverConfig* external);

/// Report line: "LABEL  internal=V1 external=V2 class=C".
std::string format_record(const DiffRecord& r);

/// Count block: total first, then each class that occurred, in enum order.
std::string format_summary(const std::vector<DiffRecord>& records);

/// Machine-readable line: one JSON object with script, seed, internal,
/// external, class, label.
std::string jsonl_record(const DiffRecord& r);

}  // namespace ffa
