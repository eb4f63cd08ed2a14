#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/stat.h>
#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "ffa/fuzz.hpp"
#include "ffa/interop.hpp"

using ffa::ConwayCache;
using ffa::DiffClass;
using ffa::DiffOptions;
using ffa::DiffRecord;
using ffa::ExternalResult;
using ffa::ExternalSolverConfig;
using ffa::ExternalStatus;
using ffa::InvalidInputError;
using ffa::ModelCheck;
using ffa::smtlib::SortBuilder;

namespace {

ConwayCache& cache() {
  static ConwayCache c;
  return c;
}

SortBuilder& sorts() {
  static SortBuilder b(cache());
  return b;
}

// Directory of executable fake solvers, removed on destruction.
class FakeDir {
 public:
  FakeDir() {
    char name[] = "/tmp/ffa-fakes-XXXXXX";
    REQUIRE(mkdtemp(name) != nullptr);
    dir_ = name;
  }
  ~FakeDir() {
    for (const auto& f : files_) unlink(f.c_str());
    rmdir(dir_.c_str());
  }

  // Installs a shell script; the solver receives the script file as $1.
  std::string add(const std::string& name, const std::string& body) {
    const std::string path = raw(name, "#!/bin/sh\n" + body);
    REQUIRE(chmod(path.c_str(), 0755) == 0);
    return path;
  }

  std::string raw(const std::string& name, const std::string& content) {
    const std::string path = dir_ + "/" + name;
    std::ofstream(path) << content;
    files_.push_back(path);
    return path;
  }

 private:
  std::string dir_;
  std::vector<std::string> files_;
};

ExternalSolverConfig fake_config(const std::string& path,
                                 double timeout = 5.0) {
  return {"fake", {path, "{file}"}, timeout};
}

std::string write_script(FakeDir& dir, const std::string& text) {
  static int counter = 0;
  return dir.raw("input" + std::to_string(counter++) + ".smt2", text);
}

const std::string kPairScript =
    "(set-logic QF_FFA)\n"
    "(declare-fun x () (_ FiniteField 5))\n"
    "(declare-fun y () (_ FiniteField 5))\n"
    "(assert (= (ff.mul x y) (as ff1 (_ FiniteField 5))))\n"
    "(check-sat)\n";

ModelCheck check_model(const std::string& model_text,
                       const std::string& script_text = kPairScript) {
  return ffa::validate_external_model(
      model_text, ffa::smtlib::check_script_text(script_text, sorts()));
}

}  // namespace

TEST_CASE("solver specs parse into command templates") {
  const auto cfg = ffa::parse_solver_spec(
      "cvc5=cvc5 --ff-solver split {file} --quiet", 7.5);
  CHECK(cfg.label == "cvc5");
  CHECK(cfg.timeout_sec == 7.5);
  CHECK(cfg.command == std::vector<std::string>{
                           "cvc5", "--ff-solver", "split", "{file}",
                           "--quiet"});

  const auto bare = ffa::parse_solver_spec("yices=yices-smt2", 1.0);
  CHECK(bare.command ==
        std::vector<std::string>{"yices-smt2", "{file}"});

  const auto embedded = ffa::parse_solver_spec("t=tool --input={file}", 1.0);
  CHECK(embedded.command ==
        std::vector<std::string>{"tool", "--input={file}"});

  CHECK_THROWS_AS(ffa::parse_solver_spec("no-equals-here", 1.0),
                  InvalidInputError);
  CHECK_THROWS_AS(ffa::parse_solver_spec("=cmd", 1.0), InvalidInputError);
  CHECK_THROWS_AS(ffa::parse_solver_spec("label=", 1.0), InvalidInputError);
  CHECK_THROWS_AS(ffa::parse_solver_spec("l=a {file} b {file}", 1.0),
                  InvalidInputError);
}

TEST_CASE("executable lookup walks PATH") {
  CHECK(ffa::find_on_path("sh").has_value());
  CHECK(ffa::find_on_path("/bin/sh").has_value());
  CHECK_FALSE(ffa::find_on_path("surely-not-a-solver-7q9z").has_value());
  CHECK_FALSE(ffa::find_on_path("/nonexistent/dir/solver").has_value());
}

TEST_CASE("external runs capture verdicts") {
  FakeDir dir;
  const std::string input = write_script(dir, kPairScript);

  SUBCASE("plain sat") {
    const auto r = ffa::run_external(
        fake_config(dir.add("sat.sh", "echo sat\n")), input);
    REQUIRE(r.status == ExternalStatus::Answered);
    CHECK(r.verdict == "sat");
    CHECK(r.model_text.empty());
  }
  SUBCASE("unsat with stderr noise and blank lines") {
    const auto r = ffa::run_external(
        fake_config(dir.add("noisy.sh",
                            "echo 'warning: something' >&2\n"
                            "echo\n"
                            "echo '  unsat '\n")),
        input);
    REQUIRE(r.status == ExternalStatus::Answered);
    CHECK(r.verdict == "unsat");
  }
  SUBCASE("model text follows the verdict line") {
    const auto r = ffa::run_external(
        fake_config(dir.add("model.sh",
                            "echo sat\n"
                            "echo '((define-fun x () (_ FiniteField 5) "
                            "(_ ff2 5)))'\n")),
        input);
    REQUIRE(r.status == ExternalStatus::Answered);
    CHECK(r.model_text ==
          "((define-fun x () (_ FiniteField 5) (_ ff2 5)))\n");
  }
  SUBCASE("missing executable") {
    const auto r = ffa::run_external(
        fake_config("/nonexistent/dir/solver"), input);
    CHECK(r.status == ExternalStatus::SpawnFailed);
    CHECK(r.detail.find("cannot run") != std::string::npos);
  }
  SUBCASE("unrecognized output") {
    const auto r = ffa::run_external(
        fake_config(dir.add("garbage.sh", "echo 'hello there'\n")), input);
    CHECK(r.status == ExternalStatus::Garbage);
    CHECK(r.detail.find("hello there") != std::string::npos);
  }
  SUBCASE("silent failure keeps the exit status") {
    const auto r = ffa::run_external(
        fake_config(dir.add("silent.sh", "exit 3\n")), input);
    CHECK(r.status == ExternalStatus::Garbage);
    CHECK(r.detail.find("exit status 3") != std::string::npos);
  }
  SUBCASE("timeout kills the process") {
    const auto r = ffa::run_external(
        fake_config(dir.add("slow.sh", "sleep 30\necho sat\n"), 0.3), input);
    CHECK(r.status == ExternalStatus::TimedOut);
  }
  SUBCASE("large output does not deadlock") {
    const auto r = ffa::run_external(
        fake_config(dir.add("big.sh",
                            "echo sat\n"
                            "head -c 300000 /dev/zero | tr '\\0' 'a'\n")),
        input);
    REQUIRE(r.status == ExternalStatus::Answered);
    CHECK(r.model_text.size() >= 300000);
  }
  SUBCASE("the script file reaches the solver") {
    const auto r = ffa::run_external(
        fake_config(dir.add("cat.sh", "head -n 1 \"$1\"\n")), input);
    CHECK(r.status == ExternalStatus::Garbage);
    CHECK(r.detail.find("set-logic") != std::string::npos);
  }
}

TEST_CASE("external models validate against the script") {
  SUBCASE("normalized model of the right shape") {
    const auto mc = check_model(
        "((define-fun x () (_ FiniteField 5) (_ ff2 5))\n"
        " (define-fun y () (_ FiniteField 5) (_ ff-2 5)))");
    CHECK(mc.valid);
    CHECK(mc.normalized);
    CHECK(mc.detail.empty());
    REQUIRE(mc.model.has_value());
    REQUIRE(mc.model->size() == 2);
    CHECK(mc.model->entries()[0].first == "x");
    CHECK(mc.model->entries()[1].first == "y");
  }
  SUBCASE("optional model head symbol") {
    const auto mc = check_model(
        "(model (define-fun x () (_ FiniteField 5) (_ ff2 5))\n"
        "       (define-fun y () (_ FiniteField 5) (_ ff-2 5)))");
    CHECK(mc.valid);
    CHECK(mc.normalized);
  }
  SUBCASE("entry order need not follow declaration order") {
    const auto mc = check_model(
        "((define-fun y () (_ FiniteField 5) (_ ff-2 5))\n"
        " (define-fun x () (_ FiniteField 5) (_ ff2 5)))");
    REQUIRE(mc.valid);
    CHECK(mc.model->entries()[0].first == "x");
  }
  SUBCASE("non-symmetric residue is flagged, not rejected") {
    const auto mc = check_model(
        "((define-fun x () (_ FiniteField 5) (_ ff2 5))\n"
        " (define-fun y () (_ FiniteField 5) (_ ff3 5)))");
    CHECK(mc.valid);
    CHECK_FALSE(mc.normalized);
    CHECK(mc.detail.find("(_ ff3 5)") != std::string::npos);
    CHECK(mc.detail.find("(_ ff-2 5)") != std::string::npos);
  }
  SUBCASE("annotated and bare spellings are flagged") {
    CHECK_FALSE(check_model(
                    "((define-fun x () (_ FiniteField 5) "
                    "(as ff2 (_ FiniteField 5)))\n"
                    " (define-fun y () (_ FiniteField 5) (_ ff-2 5)))")
                    .normalized);
    const auto bare = check_model(
        "((define-fun x () (_ FiniteField 5) ff2)\n"
        " (define-fun y () (_ FiniteField 5) (_ ff-2 5)))");
    CHECK(bare.valid);
    CHECK_FALSE(bare.normalized);
  }
  SUBCASE("missing constant") {
    const auto mc =
        check_model("((define-fun x () (_ FiniteField 5) (_ ff2 5)))");
    CHECK_FALSE(mc.valid);
    CHECK(mc.detail.find("omits") != std::string::npos);
  }
  SUBCASE("duplicate constant") {
    const auto mc = check_model(
        "((define-fun x () (_ FiniteField 5) (_ ff2 5))\n"
        " (define-fun x () (_ FiniteField 5) (_ ff2 5)))");
    CHECK_FALSE(mc.valid);
    CHECK(mc.detail.find("twice") != std::string::npos);
  }
  SUBCASE("undeclared constant") {
    const auto mc = check_model(
        "((define-fun x () (_ FiniteField 5) (_ ff2 5))\n"
        " (define-fun y () (_ FiniteField 5) (_ ff-2 5))\n"
        " (define-fun z () (_ FiniteField 5) (_ ff0 5)))");
    CHECK_FALSE(mc.valid);
    CHECK(mc.detail.find("undeclared") != std::string::npos);
  }
  SUBCASE("wrong sort") {
    const auto mc = check_model(
        "((define-fun x () (_ FiniteField 7) (_ ff2 7))\n"
        " (define-fun y () (_ FiniteField 5) (_ ff-2 5)))");
    CHECK_FALSE(mc.valid);
    CHECK(mc.detail.find("wrong sort") != std::string::npos);
  }
  SUBCASE("value sort must match the entry sort") {
    const auto mc = check_model(
        "((define-fun x () (_ FiniteField 5) (_ ff2 7))\n"
        " (define-fun y () (_ FiniteField 5) (_ ff-2 5)))");
    CHECK_FALSE(mc.valid);
  }
  SUBCASE("model falsifying an assertion") {
    const auto mc = check_model(
        "((define-fun x () (_ FiniteField 5) (_ ff1 5))\n"
        " (define-fun y () (_ FiniteField 5) (_ ff-2 5)))");
    CHECK_FALSE(mc.valid);
    CHECK(mc.detail.find("falsifies") != std::string::npos);
    CHECK(mc.detail.find("line 4") != std::string::npos);
  }
  SUBCASE("non-literal value") {
    const auto mc = check_model(
        "((define-fun x () (_ FiniteField 5) y)\n"
        " (define-fun y () (_ FiniteField 5) (_ ff-2 5)))");
    CHECK_FALSE(mc.valid);
  }
  SUBCASE("too many coefficients for a prime sort") {
    const auto mc = check_model(
        "((define-fun x () (_ FiniteField 5) (_ ff1.2 5))\n"
        " (define-fun y () (_ FiniteField 5) (_ ff-2 5)))");
    CHECK_FALSE(mc.valid);
  }
  SUBCASE("unbalanced text") {
    CHECK_FALSE(check_model("((define-fun x").valid);
    CHECK_FALSE(check_model("sat").valid);
    CHECK_FALSE(check_model("() ()").valid);
  }
  SUBCASE("sort aliases from the script are honored") {
    const std::string aliased =
        "(set-logic QF_FFA)\n"
        "(define-sort S () (_ FiniteField 5))\n"
        "(declare-fun x () S)\n"
        "(assert (= x (as ff-2 S)))\n"
        "(check-sat)\n";
    const auto mc =
        check_model("((define-fun x () S (_ ff-2 5)))", aliased);
    CHECK(mc.valid);
    CHECK(mc.normalized);
    const auto annotated =
        check_model("((define-fun x () S (as ff-2 S)))", aliased);
    CHECK(annotated.valid);
    CHECK_FALSE(annotated.normalized);
  }
  SUBCASE("extension sort values") {
    const std::string ext =
        "(set-logic QF_FFA)\n"
        "(declare-fun a () (_ FiniteField 3 2))\n"
        "(assert (= (ff.mul a a) (ff.add a (as ff1 (_ FiniteField 3 2)))))\n"
        "(check-sat)\n";
    const auto mc = check_model("((define-fun a () (_ FiniteField 3 2) "
                                "(_ ff1.-1 3 2)))",
                                ext);
    CHECK(mc.valid);
    CHECK(mc.normalized);
    const auto padded = check_model(
        "((define-fun a () (_ FiniteField 3 2) (_ ff1.2.0 3 2)))", ext);
    CHECK_FALSE(padded.valid);  // three coefficients at degree 2
    const auto high = check_model(
        "((define-fun a () (_ FiniteField 3 2) (_ ff1.2 3 2)))", ext);
    CHECK(high.valid);
    CHECK_FALSE(high.normalized);
  }
}

TEST_CASE("generated scripts are deterministic and well-sorted") {
  CHECK(ffa::fuzz_generate(7) == ffa::fuzz_generate(7));
  CHECK(ffa::fuzz_generate(7) != ffa::fuzz_generate(8));
  const std::string s = ffa::fuzz_generate(7);
  CHECK(s.rfind("(set-logic QF_FFA)\n", 0) == 0);
  CHECK(s.size() >= 15);
  CHECK(s.substr(s.size() - 12) == "(check-sat)\n");

  size_t div_heavy = 0;
  size_t total_ops = 0;
  std::set<std::string> moduli_seen;
  for (unsigned long seed = 0; seed < 10000; ++seed) {
    const std::string text = ffa::fuzz_generate(seed);
    CHECK_NOTHROW(ffa::smtlib::check_script_text(text, sorts()));
    for (const char* op :
         {"ff.add", "ff.sub", "ff.mul", "ff.neg", "ff.div", "ff.recip"}) {
      size_t at = 0;
      while ((at = text.find(op, at)) != std::string::npos) {
        ++total_ops;
        if (op[3] == 'd' || op[3] == 'r') ++div_heavy;
        at += 6;
      }
    }
    // One modulus per script.
    std::set<std::string> here;
    size_t at = 0;
    while ((at = text.find("FiniteField ", at)) != std::string::npos) {
      at += 12;
      here.insert(text.substr(at, text.find(')', at) - at));
    }
    CHECK(here.size() == 1);
    moduli_seen.insert(*here.begin());
  }
  // ff.add also matches inside no other op; ff.div/ff.recip at >= 25%.
  CHECK(total_ops > 10000);
  CHECK(div_heavy * 4 >= total_ops);
  CHECK(moduli_seen == std::set<std::string>{"3", "5"});
}

TEST_CASE("internal-only differential runs agree with the reference") {
  DiffOptions opts;
  opts.internal_only = true;
  for (unsigned long seed = 0; seed < 60; ++seed) {
    const DiffRecord r =
        ffa::diff_one(ffa::fuzz_generate(seed), "seed:" + std::to_string(seed),
                      seed, sorts(), opts, nullptr);
    CHECK(r.label == "naive");
    const bool ok = r.klass == DiffClass::Agree ||
                    r.klass == DiffClass::AgreeVacuous;
    CHECK_MESSAGE(ok, "seed ", seed, " class ", ffa::to_string(r.klass));
  }
}

TEST_CASE("differential runs classify external behavior") {
  FakeDir dir;
  const std::string sat_script =
      "(set-logic QF_FFA)\n"
      "(declare-fun x () (_ FiniteField 5))\n"
      "(assert (= (ff.add x x) (as ff1 (_ FiniteField 5))))\n"
      "(check-sat)\n";
  DiffOptions opts;

  // Answers sat; on the model-fetch rerun prints the given value for x.
  const auto model_solver = [&dir](const std::string& name,
                                   const std::string& value) {
    return dir.add(name,
                   "echo sat\n"
                   "if grep -q get-model \"$1\"; then\n"
                   "  echo '((define-fun x () (_ FiniteField 5) " +
                       value + "))'\nfi\n");
  };

  SUBCASE("agreement with a valid normalized model") {
    const auto cfg = fake_config(model_solver("good.sh", "(_ ff-2 5)"));
    const DiffRecord r =
        ffa::diff_one(sat_script, "s", std::nullopt, sorts(), opts, &cfg);
    CHECK(r.klass == DiffClass::Agree);
    CHECK(r.internal_verdict == "sat");
    CHECK(r.external_verdict == "sat");
    CHECK(ffa::format_record(r) ==
          "fake  internal=sat external=sat class=agree");
  }
  SUBCASE("valid model in a non-normalized spelling") {
    const auto cfg = fake_config(model_solver("denorm.sh", "(_ ff3 5)"));
    const DiffRecord r =
        ffa::diff_one(sat_script, "s", std::nullopt, sorts(), opts, &cfg);
    CHECK(r.klass == DiffClass::NormalizationWarning);
  }
  SUBCASE("model that does not satisfy the script") {
    const auto cfg = fake_config(model_solver("wrong.sh", "(_ ff1 5)"));
    const DiffRecord r =
        ffa::diff_one(sat_script, "s", std::nullopt, sorts(), opts, &cfg);
    CHECK(r.klass == DiffClass::ModelInvalid);
  }
  SUBCASE("verdict mismatch") {
    const auto cfg = fake_config(dir.add("unsat.sh", "echo unsat\n"));
    const DiffRecord r =
        ffa::diff_one(sat_script, "s", std::nullopt, sorts(), opts, &cfg);
    CHECK(r.klass == DiffClass::VerdictMismatch);
    CHECK(ffa::format_record(r) ==
          "fake  internal=sat external=unsat class=verdict-mismatch");
  }
  SUBCASE("external unknown is vacuous agreement") {
    const auto cfg = fake_config(dir.add("unknown.sh", "echo unknown\n"));
    const DiffRecord r =
        ffa::diff_one(sat_script, "s", std::nullopt, sorts(), opts, &cfg);
    CHECK(r.klass == DiffClass::AgreeVacuous);
  }
  SUBCASE("garbage output") {
    const auto cfg = fake_config(dir.add("garbage.sh", "echo wat\n"));
    const DiffRecord r =
        ffa::diff_one(sat_script, "s", std::nullopt, sorts(), opts, &cfg);
    CHECK(r.klass == DiffClass::ExternalError);
    CHECK(r.external_verdict == "none");
  }
  SUBCASE("missing executable is a skip") {
    const ExternalSolverConfig cfg{"ghost",
                                   {"surely-not-a-solver-7q9z", "{file}"},
                                   5.0};
    const DiffRecord r =
        ffa::diff_one(sat_script, "s", std::nullopt, sorts(), opts, &cfg);
    CHECK(r.klass == DiffClass::Skipped);
    CHECK(ffa::format_record(r) ==
          "ghost  internal=sat external=none class=skipped");
  }
  SUBCASE("timeout class") {
    const auto cfg =
        fake_config(dir.add("slow.sh", "sleep 30\necho sat\n"), 0.3);
    const DiffRecord r =
        ffa::diff_one(sat_script, "s", std::nullopt, sorts(), opts, &cfg);
    CHECK(r.klass == DiffClass::Timeout);
  }
  SUBCASE("model and value queries are the harness's own business") {
    const auto cfg = fake_config(dir.add("sat.sh", "echo sat\n"));
    CHECK_THROWS_AS(ffa::diff_one(sat_script + "(get-model)\n", "s",
                                  std::nullopt, sorts(), opts, &cfg),
                    InvalidInputError);
    CHECK_THROWS_AS(ffa::diff_one("(set-logic QF_FFA)\n(check-sat)\n"
                                  "(check-sat)\n",
                                  "s", std::nullopt, sorts(), opts, &cfg),
                    InvalidInputError);
  }
}

TEST_CASE("report formatting") {
  DiffRecord a{"cvc5", "seed:7", 7, "unsat", "unsat", DiffClass::Agree, ""};
  DiffRecord b{"cvc5", "corpus/x.smt2", std::nullopt, "sat", "none",
               DiffClass::Skipped, "executable not found"};
  CHECK(ffa::format_record(a) ==
        "cvc5  internal=unsat external=unsat class=agree");
  CHECK(ffa::jsonl_record(a) ==
        "{\"class\":\"agree\",\"external\":\"unsat\",\"internal\":\"unsat\","
        "\"label\":\"cvc5\",\"script\":\"seed:7\",\"seed\":7}");
  CHECK(ffa::jsonl_record(b) ==
        "{\"class\":\"skipped\",\"external\":null,\"internal\":\"sat\","
        "\"label\":\"cvc5\",\"script\":\"corpus/x.smt2\",\"seed\":null}");
  const std::string summary = ffa::format_summary({a, a, b});
  CHECK(summary ==
        "total                 3\n"
        "agree                 2\n"
        "skipped               1\n");
}
