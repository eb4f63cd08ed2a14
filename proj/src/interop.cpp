#include "ffa/interop.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <iomanip>
#include <map>
#include <sstream>

#include "ffa/errors.hpp"
#include "ffa/smtlib/lexer.hpp"
#include "ffa/smtlib/printer.hpp"
#include "json.hpp"

namespace ffa {

using smtlib::SExpr;
using smtlib::TypedCommand;
using smtlib::TypedScript;

ExternalSolverConfig parse_solver_spec(const std::string& spec,
                                       double timeout_sec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw InvalidInputError("solver spec must look like LABEL=COMMAND: '" +
                            spec + "'");
  }
  ExternalSolverConfig cfg;
  cfg.label = spec.substr(0, eq);
  cfg.timeout_sec = timeout_sec;
  std::istringstream rest(spec.substr(eq + 1));
  std::string word;
  size_t placeholders = 0;
  while (rest >> word) {
    size_t at = 0;
    while ((at = word.find("{file}", at)) != std::string::npos) {
      ++placeholders;
      at += 6;
    }
    cfg.command.push_back(word);
  }
  if (cfg.command.empty()) {
    throw InvalidInputError("solver spec '" + cfg.label +
                            "' has an empty command");
  }
  if (placeholders > 1) {
    throw InvalidInputError("solver spec '" + cfg.label +
                            "' repeats the {file} placeholder");
  }
  if (placeholders == 0) cfg.command.push_back("{file}");
  return cfg;
}

std::optional<std::string> find_on_path(const std::string& name) {
  if (name.empty()) return std::nullopt;
  if (name.find('/') != std::string::npos) {
    if (access(name.c_str(), X_OK) == 0) return name;
    return std::nullopt;
  }
  const char* path = std::getenv("PATH");
  if (path == nullptr) return std::nullopt;
  std::istringstream dirs(path);
  std::string dir;
  while (std::getline(dirs, dir, ':')) {
    if (dir.empty()) dir = ".";
    std::string candidate = dir + "/" + name;
    if (access(candidate.c_str(), X_OK) == 0) return candidate;
  }
  return std::nullopt;
}

namespace {

std::vector<std::string> instantiate_command(const ExternalSolverConfig& cfg,
                                             const std::string& path) {
  std::vector<std::string> argv = cfg.command;
  for (auto& arg : argv) {
    const auto at = arg.find("{file}");
    if (at != std::string::npos) arg.replace(at, 6, path);
  }
  return argv;
}

struct PipePair {
  int r = -1;
  int w = -1;
};

PipePair open_pipe() {
  int fds[2];
  if (pipe(fds) != 0) throw Error("pipe: " + std::string(strerror(errno)));
  return {fds[0], fds[1]};
}

void close_fd(int& fd) {
  if (fd >= 0) {
    close(fd);
    fd = -1;
  }
}

std::string_view trimmed(std::string_view line) {
  while (!line.empty() && (line.back() == '\r' || line.back() == ' ' ||
                           line.back() == '\t')) {
    line.remove_suffix(1);
  }
  while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) {
    line.remove_prefix(1);
  }
  return line;
}

}  // namespace

ExternalResult run_external(const ExternalSolverConfig& cfg,
                            const std::string& script_path) {
  const std::vector<std::string> argv = instantiate_command(cfg, script_path);
  PipePair out = open_pipe();
  PipePair err = open_pipe();
  PipePair status = open_pipe();
  fcntl(status.w, F_SETFD, FD_CLOEXEC);

  const pid_t pid = fork();
  if (pid < 0) {
    for (int* fd : {&out.r, &out.w, &err.r, &err.w, &status.r, &status.w}) {
      close_fd(*fd);
    }
    return {ExternalStatus::SpawnFailed, "", "",
            "fork: " + std::string(strerror(errno))};
  }
  if (pid == 0) {
    dup2(out.w, STDOUT_FILENO);
    dup2(err.w, STDERR_FILENO);
    for (int* fd : {&out.r, &out.w, &err.r, &err.w, &status.r}) {
      close_fd(*fd);
    }
    std::vector<char*> cargv;
    cargv.reserve(argv.size() + 1);
    for (const auto& a : argv) cargv.push_back(const_cast<char*>(a.c_str()));
    cargv.push_back(nullptr);
    execvp(cargv[0], cargv.data());
    const int code = errno;
    ssize_t ignored = write(status.w, &code, sizeof code);
    (void)ignored;
    _exit(127);
  }

  close_fd(out.w);
  close_fd(err.w);
  close_fd(status.w);

  std::string out_buf;
  std::string err_buf;
  int exec_errno = 0;
  const auto deadline =
      std::chrono::steady_clock::now() +
      std::chrono::duration_cast<std::chrono::steady_clock::duration>(
          std::chrono::duration<double>(cfg.timeout_sec));
  bool timed_out = false;

  while (out.r >= 0 || err.r >= 0 || status.r >= 0) {
    const auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    if (remaining.count() <= 0) {
      timed_out = true;
      break;
    }
    pollfd fds[3];
    int* slots[3];
    nfds_t n = 0;
    for (int* fd : {&out.r, &err.r, &status.r}) {
      if (*fd >= 0) {
        fds[n] = {*fd, POLLIN, 0};
        slots[n] = fd;
        ++n;
      }
    }
    const int ready = poll(fds, n, static_cast<int>(
                                       std::min<long long>(remaining.count(),
                                                           60000)));
    if (ready < 0) {
      if (errno == EINTR) continue;
      break;
    }
    for (nfds_t i = 0; i < n; ++i) {
      if ((fds[i].revents & (POLLIN | POLLHUP | POLLERR)) == 0) continue;
      char chunk[4096];
      const ssize_t got = read(fds[i].fd, chunk, sizeof chunk);
      if (got > 0) {
        if (slots[i] == &out.r) {
          out_buf.append(chunk, static_cast<size_t>(got));
        } else if (slots[i] == &err.r) {
          err_buf.append(chunk, static_cast<size_t>(got));
        } else {
          std::memcpy(&exec_errno, chunk,
                      std::min(sizeof exec_errno, static_cast<size_t>(got)));
        }
      } else {
        close_fd(*slots[i]);
      }
    }
  }

  for (int* fd : {&out.r, &err.r, &status.r}) close_fd(*fd);
  if (timed_out) {
    kill(pid, SIGKILL);
    waitpid(pid, nullptr, 0);
    return {ExternalStatus::TimedOut, "", "",
            cfg.label + " exceeded " + std::to_string(cfg.timeout_sec) +
                "s and was killed"};
  }
  int wstatus = 0;
  waitpid(pid, &wstatus, 0);
  if (exec_errno != 0) {
    return {ExternalStatus::SpawnFailed, "", "",
            "cannot run " + argv[0] + ": " + strerror(exec_errno)};
  }

  // First non-blank line decides; everything after it is the model text.
  size_t at = 0;
  while (at < out_buf.size()) {
    size_t end = out_buf.find('\n', at);
    if (end == std::string::npos) end = out_buf.size();
    const std::string_view line = trimmed(
        std::string_view(out_buf).substr(at, end - at));
    if (!line.empty()) {
      if (line == "sat" || line == "unsat" || line == "unknown") {
        std::string rest =
            end < out_buf.size() ? out_buf.substr(end + 1) : std::string();
        return {ExternalStatus::Answered, std::string(line), std::move(rest),
                ""};
      }
      std::string shown(line.substr(0, 120));
      return {ExternalStatus::Garbage, "", "",
              "unrecognized output: '" + shown + "'"};
    }
    at = end + 1;
  }
  std::ostringstream detail;
  detail << "no output";
  if (WIFEXITED(wstatus) && WEXITSTATUS(wstatus) != 0) {
    detail << " (exit status " << WEXITSTATUS(wstatus) << ")";
  }
  if (!err_buf.empty()) {
    detail << "; stderr: '"
           << std::string(trimmed(err_buf).substr(0, 120)) << "'";
  }
  return {ExternalStatus::Garbage, "", "", detail.str()};
}

namespace {

// p and degree named by a sort spelling, resolved through the script's
// aliases; nullopt when the form is not a field sort.
std::optional<std::pair<Integer, unsigned>> sort_key(
    const SExpr& e, const std::map<std::string, FieldSort>& aliases) {
  if (e.leaf) {
    if (e.atom.kind != smtlib::TokenKind::Symbol) return std::nullopt;
    const auto it = aliases.find(e.atom.text);
    if (it == aliases.end()) return std::nullopt;
    return std::make_pair(it->second.p(), it->second.degree());
  }
  if (e.items.size() != 3 && e.items.size() != 4) return std::nullopt;
  if (!e.items[0].is_symbol("_") || !e.items[1].is_symbol("FiniteField")) {
    return std::nullopt;
  }
  for (size_t i = 2; i < e.items.size(); ++i) {
    if (!e.items[i].leaf ||
        e.items[i].atom.kind != smtlib::TokenKind::Numeral) {
      return std::nullopt;
    }
  }
  Integer p(e.items[2].atom.text);
  unsigned n = 1;
  if (e.items.size() == 4) {
    try {
      const unsigned long parsed = std::stoul(e.items[3].atom.text);
      if (parsed < 2 || parsed > 1u << 20) return std::nullopt;
      n = static_cast<unsigned>(parsed);
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }
  return std::make_pair(std::move(p), n);
}

bool matches_sort(const std::optional<std::pair<Integer, unsigned>>& key,
                  const FieldSort& sort) {
  return key && key->first == sort.p() && key->second == sort.degree();
}

const SExpr* literal_leaf(const SExpr& e) {
  if (e.leaf && e.atom.kind == smtlib::TokenKind::FfLiteral) return &e;
  return nullptr;
}

}  // namespace

ModelCheck validate_external_model(const std::string& model_text,
                                   const TypedScript& script) {
  ModelCheck out;
  const auto fail = [&out](std::string why) {
    out.valid = false;
    out.detail = std::move(why);
    return out;
  };

  std::vector<SExpr> forms;
  try {
    forms = smtlib::parse_sexprs(smtlib::tokenize(model_text));
  } catch (const ScriptError& e) {
    return fail(std::string("model text: ") + e.what());
  }
  if (forms.size() != 1 || forms[0].leaf) {
    return fail("model text is not a single parenthesized block");
  }

  std::map<std::string, FieldSort> aliases;
  for (const auto& cmd : script.commands) {
    if (cmd.kind == TypedCommand::Kind::DefineSort) {
      aliases.emplace(cmd.symbol, *cmd.sort);
    }
  }

  const auto& items = forms[0].items;
  size_t first = 0;
  if (!items.empty() && items[0].is_symbol("model")) first = 1;

  Model parsed;
  std::string norm_detail;
  for (size_t i = first; i < items.size(); ++i) {
    const SExpr& entry = items[i];
    if (entry.leaf || entry.items.size() != 5 ||
        !entry.items[0].is_symbol("define-fun") || !entry.items[1].leaf ||
        entry.items[1].atom.kind != smtlib::TokenKind::Symbol ||
        entry.items[2].leaf || !entry.items[2].items.empty()) {
      return fail("entry " + std::to_string(i - first + 1) +
                  " is not (define-fun name () sort value)");
    }
    const std::string& name = entry.items[1].atom.text;
    const smtlib::Declaration* dcl = script.find_declaration(name);
    if (dcl == nullptr || dcl->internal) {
      return fail("model binds undeclared constant '" + name + "'");
    }
    if (parsed.find(name) != nullptr) {
      return fail("model binds '" + name + "' twice");
    }
    if (!matches_sort(sort_key(entry.items[3], aliases), dcl->sort)) {
      return fail("'" + name + "' is bound at the wrong sort");
    }

    const SExpr& value = entry.items[4];
    const SExpr* lit = literal_leaf(value);
    if (lit == nullptr && !value.leaf &&
        (value.items.size() == 3 || value.items.size() == 4) &&
        value.items[0].is_symbol("_")) {
      // Indexed form (_ ffX p [n]): its indices must name the declared sort.
      lit = literal_leaf(value.items[1]);
      bool indices_ok = lit != nullptr;
      for (size_t k = 2; indices_ok && k < value.items.size(); ++k) {
        indices_ok = value.items[k].leaf &&
                     value.items[k].atom.kind == smtlib::TokenKind::Numeral;
      }
      if (indices_ok) {
        const Integer p(value.items[2].atom.text);
        unsigned n = 1;
        if (value.items.size() == 4) {
          try {
            n = static_cast<unsigned>(std::stoul(value.items[3].atom.text));
          } catch (const std::exception&) {
            indices_ok = false;
          }
        }
        indices_ok = indices_ok && p == dcl->sort.p() &&
                     n == dcl->sort.degree() &&
                     (value.items.size() == 3 || n >= 2);
      }
      if (!indices_ok) {
        return fail("value for '" + name +
                    "' is not a literal of its declared sort");
      }
    } else if (lit == nullptr && !value.leaf && value.items.size() == 3 &&
               value.items[0].is_symbol("as")) {
      lit = literal_leaf(value.items[1]);
      if (lit == nullptr ||
          !matches_sort(sort_key(value.items[2], aliases), dcl->sort)) {
        return fail("value for '" + name +
                    "' is not a literal of its declared sort");
      }
    } else if (lit == nullptr) {
      return fail("value for '" + name + "' is not a field literal");
    }

    FieldElement element = FieldElement::zero(dcl->sort);
    try {
      element = normalize_literal(dcl->sort,
                                  smtlib::literal_coefficients(
                                      lit->atom.text.substr(2)));
    } catch (const Error& e) {
      return fail("value for '" + name + "': " + e.what());
    }
    if (smtlib::print_sexpr(value) != print_literal(element)) {
      out.normalized = false;
      if (norm_detail.empty()) {
        norm_detail = "'" + name + "' uses the non-normalized spelling " +
                      smtlib::print_sexpr(value) + " for " +
                      print_literal(element);
      }
    }
    parsed.insert(name, std::move(element));
  }

  // Reorder into declaration order; every declared constant must be bound.
  Model model;
  for (const auto& dcl : script.declarations) {
    if (dcl.internal) continue;
    const FieldElement* v = parsed.find(dcl.name);
    if (v == nullptr) {
      return fail("model omits declared constant '" + dcl.name + "'");
    }
    model.insert(dcl.name, *v);
  }

  for (const auto& cmd : script.commands) {
    if (cmd.kind != TypedCommand::Kind::Assert) continue;
    if (!eval_assertion(cmd.terms[0], model)) {
      return fail("model falsifies the assertion at line " +
                  std::to_string(cmd.pos.line));
    }
  }

  out.valid = true;
  out.detail = out.normalized ? "" : norm_detail;
  out.model = std::move(model);
  return out;
}

std::string to_string(DiffClass c) {
  switch (c) {
    case DiffClass::Agree:
      return "agree";
    case DiffClass::AgreeVacuous:
      return "agree-vacuous";
    case DiffClass::VerdictMismatch:
      return "verdict-mismatch";
    case DiffClass::ModelInvalid:
      return "model-invalid";
    case DiffClass::NormalizationWarning:
      return "normalization-warning";
    case DiffClass::ExternalError:
      return "external-error";
    case DiffClass::Timeout:
      return "timeout";
    case DiffClass::Skipped:
      return "skipped";
  }
  return "?";
}

namespace {

class TempScript {
 public:
  explicit TempScript(const std::string& content) {
    char name[] = "/tmp/ffsmt-XXXXXX.smt2";
    const int fd = mkstemps(name, 5);
    if (fd < 0) throw Error("cannot create a temporary script file");
    path_ = name;
    size_t done = 0;
    while (done < content.size()) {
      const ssize_t wrote =
          write(fd, content.data() + done, content.size() - done);
      if (wrote <= 0) {
        close(fd);
        throw Error("cannot write the temporary script file");
      }
      done += static_cast<size_t>(wrote);
    }
    close(fd);
  }
  ~TempScript() {
    if (!path_.empty()) unlink(path_.c_str());
  }
  TempScript(const TempScript&) = delete;
  TempScript& operator=(const TempScript&) = delete;
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace

DiffRecord diff_one(const std::string& script_text,
                    const std::string& script_name,
                    std::optional<unsigned long> seed,
                    smtlib::SortBuilder& sorts, const DiffOptions& opts,
                    const ExternalSolverConfig* external) {
  DiffRecord r;
  r.script = script_name;
  r.seed = seed;
  r.external_verdict = "none";

  const TypedScript ts = smtlib::check_script_text(script_text, sorts);
  size_t checks = 0;
  for (const auto& cmd : ts.commands) {
    if (cmd.kind == TypedCommand::Kind::CheckSat) ++checks;
    if (cmd.kind == TypedCommand::Kind::GetModel ||
        cmd.kind == TypedCommand::Kind::GetValue) {
      throw InvalidInputError(script_name +
                              ": diff scripts must not contain model or "
                              "value queries; the harness issues its own");
    }
  }
  if (checks != 1) {
    throw InvalidInputError(script_name +
                            ": diff scripts must contain exactly one "
                            "(check-sat)");
  }

  const TypedScript pre = preprocess(ts);
  const SolveResult internal = check_sat(pre, opts.solver);
  r.internal_verdict = to_string(internal.verdict);

  if (opts.internal_only) {
    r.label = "naive";
    const SolveResult reference = check_sat_naive(pre, opts.solver);
    r.external_verdict = to_string(reference.verdict);
    if (internal.verdict == Verdict::Unknown ||
        reference.verdict == Verdict::Unknown) {
      r.klass = DiffClass::AgreeVacuous;
    } else if (internal.verdict != reference.verdict) {
      r.klass = DiffClass::VerdictMismatch;
    } else if (internal.verdict == Verdict::Sat &&
               internal.model->entries() != reference.model->entries()) {
      r.klass = DiffClass::ModelInvalid;
      r.detail = "pruned and reference enumerations found different models";
    } else {
      r.klass = DiffClass::Agree;
    }
    return r;
  }

  r.label = external->label;
  if (!find_on_path(external->command[0])) {
    r.klass = DiffClass::Skipped;
    r.detail = "executable not found: " + external->command[0];
    return r;
  }

  const TempScript file(script_text);
  const ExternalResult res = run_external(*external, file.path());
  switch (res.status) {
    case ExternalStatus::SpawnFailed:
    case ExternalStatus::Garbage:
      r.klass = DiffClass::ExternalError;
      r.detail = res.detail;
      return r;
    case ExternalStatus::TimedOut:
      r.klass = DiffClass::Timeout;
      r.detail = res.detail;
      return r;
    case ExternalStatus::Answered:
      break;
  }
  r.external_verdict = res.verdict;
  if (res.verdict == "unknown" || internal.verdict == Verdict::Unknown) {
    r.klass = DiffClass::AgreeVacuous;
    return r;
  }
  if (res.verdict != r.internal_verdict) {
    r.klass = DiffClass::VerdictMismatch;
    return r;
  }
  if (internal.verdict == Verdict::Unsat) {
    r.klass = DiffClass::Agree;
    return r;
  }

  // Both sat: fetch the external model with a second run and validate it.
  const TempScript with_model(script_text + "(get-model)\n");
  const ExternalResult fetched = run_external(*external, with_model.path());
  if (fetched.status != ExternalStatus::Answered ||
      fetched.verdict != "sat") {
    r.klass = DiffClass::ExternalError;
    r.detail = "model fetch failed: " +
               (fetched.detail.empty() ? "verdict changed to '" +
                                             fetched.verdict + "'"
                                       : fetched.detail);
    return r;
  }
  const ModelCheck mc = validate_external_model(fetched.model_text, ts);
  if (!mc.valid) {
    r.klass = DiffClass::ModelInvalid;
    r.detail = mc.detail;
  } else if (!mc.normalized) {
    r.klass = DiffClass::NormalizationWarning;
    r.detail = mc.detail;
  } else {
    r.klass = DiffClass::Agree;
  }
  return r;
}

std::string format_record(const DiffRecord& r) {
  return r.label + "  internal=" + r.internal_verdict +
         " external=" + r.external_verdict + " class=" + to_string(r.klass);
}

std::string format_summary(const std::vector<DiffRecord>& records) {
  std::map<DiffClass, size_t> counts;
  for (const auto& r : records) ++counts[r.klass];
  std::ostringstream os;
  os << std::left << std::setw(22) << "total" << records.size() << "\n";
  for (const DiffClass c :
       {DiffClass::Agree, DiffClass::AgreeVacuous, DiffClass::VerdictMismatch,
        DiffClass::ModelInvalid, DiffClass::NormalizationWarning,
        DiffClass::ExternalError, DiffClass::Timeout, DiffClass::Skipped}) {
    const auto it = counts.find(c);
    if (it != counts.end()) {
      os << std::left << std::setw(22) << to_string(c) << it->second << "\n";
    }
  }
  return os.str();
}

std::string jsonl_record(const DiffRecord& r) {
  nlohmann::json j;
  j["script"] = r.script;
  if (r.seed) {
    j["seed"] = *r.seed;
  } else {
    j["seed"] = nullptr;
  }
  j["internal"] = r.internal_verdict;
  if (r.external_verdict == "none") {
    j["external"] = nullptr;
  } else {
    j["external"] = r.external_verdict;
  }
  j["class"] = to_string(r.klass);
  j["label"] = r.label;
  return j.dump();
}

}  // namespace ffa
