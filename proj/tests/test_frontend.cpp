#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "ffa/smtlib/lexer.hpp"
#include "ffa/smtlib/parser.hpp"
#include "ffa/smtlib/printer.hpp"
#include "ffa/smtlib/sort_check.hpp"

using ffa::ConwayCache;
using ffa::Integer;
using ffa::ScriptError;
using ffa::SourcePos;
namespace smt = ffa::smtlib;
using smt::FfOpKind;
using smt::ParsedCommand;
using smt::Script;
using smt::SortBuilder;
using smt::Term;
using smt::TermKind;
using smt::Token;
using smt::TokenKind;
using smt::TypedCommand;
using smt::TypedScript;

namespace {

std::vector<TokenKind> kinds_of(const std::vector<Token>& ts) {
  std::vector<TokenKind> out;
  for (const Token& t : ts) out.push_back(t.kind);
  return out;
}

ScriptError capture(const std::string& text) {
  try {
    ConwayCache cache;
    SortBuilder sorts(cache);
    smt::check_script_text(text, sorts);
  } catch (const ScriptError& e) {
    return e;
  }
  FAIL("expected a script error for: ", text);
  throw std::logic_error("unreachable");
}

TypedScript check(const std::string& text) {
  ConwayCache cache;
  SortBuilder sorts(cache);
  return smt::check_script_text(text, sorts);
}

// Sort-checks a one-assertion script and returns the asserted term.
Term check_assert(const std::string& prelude, const std::string& term) {
  TypedScript s =
      check("(set-logic QF_FFA)\n" + prelude + "\n(assert " + term + ")");
  return s.commands.back().terms.at(0);
}

const std::string kDeclXY =
    "(define-sort FF5 () (_ FiniteField 5))"
    "(declare-fun x () FF5)(declare-fun y () FF5)";

}  // namespace

TEST_CASE("tokenizer splits commands into standard tokens") {
  auto ts = smt::tokenize("(assert true)");
  REQUIRE(ts.size() == 4);
  CHECK(kinds_of(ts) == std::vector<TokenKind>{TokenKind::LParen,
                                               TokenKind::Symbol,
                                               TokenKind::Symbol,
                                               TokenKind::RParen});
  CHECK(ts[1].text == "assert");
  CHECK(ts[2].text == "true");
}

TEST_CASE("a signed multi-coefficient literal is one token") {
  auto ts = smt::tokenize("ff-1.-1");
  REQUIRE(ts.size() == 1);
  CHECK(ts[0].kind == TokenKind::FfLiteral);
  CHECK(ts[0].text == "ff-1.-1");
}

TEST_CASE("indexed literal form tokenizes as list pieces") {
  auto ts = smt::tokenize("(_ ff1 3 2)");
  REQUIRE(ts.size() == 6);
  CHECK(kinds_of(ts) ==
        std::vector<TokenKind>{TokenKind::LParen, TokenKind::Symbol,
                               TokenKind::FfLiteral, TokenKind::Numeral,
                               TokenKind::Numeral, TokenKind::RParen});
  CHECK(ts[1].text == "_");
  CHECK(ts[2].text == "ff1");
  CHECK(ts[3].text == "3");
  CHECK(ts[4].text == "2");
}

TEST_CASE("literal shape recognition") {
  for (const char* yes : {"ff0", "ff10", "ff-1", "ff1.2", "ff-1.-1",
                          "ff1.0.-1.0.0", "ff007"}) {
    CAPTURE(yes);
    CHECK(smt::is_ff_literal_text(yes));
  }
  for (const char* no : {"ff", "ff.", "ff.1", "ff1.", "ff-", "ff--1", "ffx",
                         "ff1..2", "ff1.-", "f1", "xff1", "ff1x"}) {
    CAPTURE(no);
    CHECK_FALSE(smt::is_ff_literal_text(no));
  }
}

TEST_CASE("literal tails split into signed coefficients") {
  using V = std::vector<Integer>;
  CHECK(smt::literal_coefficients("10") == V{10});
  CHECK(smt::literal_coefficients("-1.-1") == V{-1, -1});
  CHECK(smt::literal_coefficients("1.0.-1.0.0") == V{1, 0, -1, 0, 0});
}

TEST_CASE("comments, strings, quoted symbols, keywords") {
  auto ts = smt::tokenize("; a comment\n(set-info :status \"un\"\"sat\") |odd name|");
  REQUIRE(ts.size() == 6);
  CHECK(ts[1].text == "set-info");
  CHECK(ts[2].kind == TokenKind::Keyword);
  CHECK(ts[2].text == "status");
  CHECK(ts[3].kind == TokenKind::String);
  CHECK(ts[3].text == "un\"sat");
  CHECK(ts[5].kind == TokenKind::Symbol);
  CHECK(ts[5].text == "odd name");
}

TEST_CASE("lexer reports positions and rejects malformed input") {
  auto ts = smt::tokenize("(assert\n  true)");
  CHECK(ts[0].pos == SourcePos{1, 1});
  CHECK(ts[1].pos == SourcePos{1, 2});
  CHECK(ts[2].pos == SourcePos{2, 3});

  CHECK_THROWS_AS(smt::tokenize("[x]"), ScriptError);
  CHECK_THROWS_AS(smt::tokenize("\"open"), ScriptError);
  CHECK_THROWS_AS(smt::tokenize("|open"), ScriptError);
  CHECK_THROWS_AS(smt::tokenize("|back\\slash|"), ScriptError);
  CHECK_THROWS_AS(smt::tokenize("007"), ScriptError);
  CHECK_THROWS_AS(smt::tokenize("12ab"), ScriptError);
  try {
    smt::tokenize("(assert\n  [x])");
    FAIL("expected a lex error");
  } catch (const ScriptError& e) {
    CHECK(e.kind() == ScriptError::Kind::Lex);
    CHECK(e.pos() == SourcePos{2, 3});
    CHECK(std::string(e.what()).find("line 2 column 3") != std::string::npos);
  }
}

TEST_CASE("parser builds the command sequence") {
  Script s = smt::parse_script_text("(set-logic QF_FFA)(check-sat)");
  REQUIRE(s.commands.size() == 2);
  CHECK(s.commands[0].kind == ParsedCommand::Kind::SetLogic);
  CHECK(s.commands[1].kind == ParsedCommand::Kind::CheckSat);
}

TEST_CASE("sort alias definitions parse") {
  Script s = smt::parse_script_text(
      "(set-logic QF_FFA)\n"
      "(define-sort FF5 () (_ FiniteField 5))\n"
      "(define-sort FF9 () (_ FiniteField 3 2))\n"
      "(declare-fun a () FF5)\n");
  REQUIRE(s.commands.size() == 4);
  CHECK(s.commands[1].kind == ParsedCommand::Kind::DefineSort);
  CHECK(s.commands[2].kind == ParsedCommand::Kind::DefineSort);
  CHECK(s.commands[3].kind == ParsedCommand::Kind::DeclareFun);
}

TEST_CASE("literal-shaped names cannot be declared") {
  for (const char* text :
       {"(declare-fun ff3 () (_ FiniteField 5))",
        "(declare-fun |ff3| () (_ FiniteField 5))",
        "(declare-fun ff-1.2 () (_ FiniteField 5))",
        "(define-sort ff0 () (_ FiniteField 5))"}) {
    CAPTURE(text);
    try {
      smt::parse_script_text(text);
      FAIL("expected rejection of: ", text);
    } catch (const ScriptError& e) {
      CHECK(std::string(e.what()).find("reserved") != std::string::npos);
    }
  }
}

TEST_CASE("parser rejects malformed commands") {
  CHECK_THROWS_AS(smt::parse_script_text("(push 1)"), ScriptError);
  CHECK_THROWS_AS(smt::parse_script_text("(assert)"), ScriptError);
  CHECK_THROWS_AS(smt::parse_script_text("(assert a b)"), ScriptError);
  CHECK_THROWS_AS(smt::parse_script_text("(check-sat"), ScriptError);
  CHECK_THROWS_AS(smt::parse_script_text("(check-sat))"), ScriptError);
  CHECK_THROWS_AS(smt::parse_script_text("(get-value ())"), ScriptError);
  CHECK_THROWS_AS(smt::parse_script_text("(set-info \"no keyword\")"),
                  ScriptError);
  try {
    smt::parse_script_text("(push 1)");
  } catch (const ScriptError& e) {
    CHECK(std::string(e.what()).find("unknown command 'push'") !=
          std::string::npos);
  }
}

TEST_CASE("zero-arity declarations only") {
  try {
    smt::parse_script_text(
        "(declare-fun f ((_ FiniteField 5)) (_ FiniteField 5))");
    FAIL("expected rejection");
  } catch (const ScriptError& e) {
    CHECK(e.kind() == ScriptError::Kind::Unsupported);
    CHECK(std::string(e.what()).find("constants") != std::string::npos);
  }
  CHECK_THROWS_AS(
      smt::parse_script_text("(define-sort V (X) (_ FiniteField 5))"),
      ScriptError);
}

TEST_CASE("quantifiers are rejected with a named diagnostic") {
  for (const char* text :
       {"(assert (forall ((x (_ FiniteField 5))) (= x x)))",
        "(assert (exists ((x (_ FiniteField 5))) (= x x)))",
        "(assert (and true (forall ((x (_ FiniteField 5))) (= x x))))",
        "(get-value ((forall ((x (_ FiniteField 5))) (= x x))))"}) {
    CAPTURE(text);
    try {
      smt::parse_script_text(text);
      FAIL("expected rejection of: ", text);
    } catch (const ScriptError& e) {
      CHECK(e.kind() == ScriptError::Kind::Unsupported);
      CHECK(std::string(e.what()).find("quantifiers") != std::string::npos);
    }
  }
}

TEST_CASE("set-logic discipline") {
  CHECK(check("(set-logic QF_FFA)").commands.size() == 1);

  ScriptError e = capture("(set-logic FFA)(check-sat)");
  CHECK(e.kind() == ScriptError::Kind::Unsupported);
  CHECK(std::string(e.what()).find("QF_FFA") != std::string::npos);

  CHECK(capture("(set-logic QF_BV)").kind() == ScriptError::Kind::Unsupported);
  CHECK(capture("(check-sat)").kind() == ScriptError::Kind::Sort);
  CHECK(capture("").kind() == ScriptError::Kind::Sort);
  CHECK(capture("(set-logic QF_FFA)(set-logic QF_FFA)").kind() ==
        ScriptError::Kind::Sort);
  CHECK(capture("(declare-fun x () (_ FiniteField 5))(set-logic QF_FFA)")
            .kind() == ScriptError::Kind::Sort);

  // set-info and exit are exempt from the ordering rule.
  TypedScript s = check("(set-info :source \"trusted\")(set-logic QF_FFA)(exit)");
  CHECK(s.commands.size() == 3);
}

TEST_CASE("field sorts must have prime characteristic") {
  ScriptError e = capture("(set-logic QF_FFA)(declare-fun x () (_ FiniteField 4))");
  CHECK(e.kind() == ScriptError::Kind::Sort);
  CHECK(e.pos().line == 1);

  CHECK_NOTHROW(check("(set-logic QF_FFA)(declare-fun x () (_ FiniteField 2))"));
  CHECK(capture("(set-logic QF_FFA)(declare-fun x () (_ FiniteField 1))")
            .kind() == ScriptError::Kind::Sort);
  CHECK(capture("(set-logic QF_FFA)(declare-fun x () (_ FiniteField 91))")
            .kind() == ScriptError::Kind::Sort);
}

TEST_CASE("degree indices outside 2..n are not sorts") {
  CHECK(capture("(set-logic QF_FFA)(declare-fun x () (_ FiniteField 5 1))")
            .kind() == ScriptError::Kind::Sort);
  CHECK(capture("(set-logic QF_FFA)(declare-fun x () (_ FiniteField 5 0))")
            .kind() == ScriptError::Kind::Sort);
}

TEST_CASE("constants must have field sorts and fresh names") {
  CHECK(capture("(set-logic QF_FFA)(declare-fun x () Bool)").kind() ==
        ScriptError::Kind::Sort);
  CHECK(capture("(set-logic QF_FFA)(declare-fun x () NoSuchSort)").kind() ==
        ScriptError::Kind::Sort);
  CHECK(capture("(set-logic QF_FFA)(declare-fun x () (_ FiniteField 5))"
                "(declare-fun x () (_ FiniteField 5))")
            .kind() == ScriptError::Kind::Sort);
  CHECK(capture("(set-logic QF_FFA)(declare-fun ite () (_ FiniteField 5))")
            .kind() == ScriptError::Kind::Sort);
  CHECK(capture("(set-logic QF_FFA)(declare-fun ff.add () (_ FiniteField 5))")
            .kind() == ScriptError::Kind::Sort);
}

TEST_CASE("field operations sort-check and keep their arity") {
  Term t = check_assert(kDeclXY, "(= (ff.mul x y) (_ ff1 5))");
  REQUIRE(t.kind() == TermKind::Eq);
  const Term& mul = t.children()[0];
  CHECK(mul.kind() == TermKind::FfOp);
  CHECK(mul.op() == FfOpKind::Mul);
  CHECK(mul.sort().is_field());
  CHECK(mul.sort().field_sort().p() == 5);

  Term sum = check_assert(kDeclXY + "(declare-fun z () FF5)",
                          "(= (ff.add x y z) (_ ff0 5))");
  CHECK(sum.children()[0].children().size() == 3);
}

TEST_CASE("operator arity violations") {
  CHECK_THROWS_AS(check_assert(kDeclXY, "(= (ff.add x) x)"), ScriptError);
  CHECK_THROWS_AS(check_assert(kDeclXY, "(= (ff.sub x y x) x)"), ScriptError);
  CHECK_THROWS_AS(check_assert(kDeclXY, "(= (ff.neg x y) x)"), ScriptError);
  CHECK_THROWS_AS(check_assert(kDeclXY, "(= (ff.recip) x)"), ScriptError);
  CHECK_THROWS_AS(check_assert(kDeclXY, "(ite true)"), ScriptError);
}

TEST_CASE("operands must share one sort") {
  ScriptError e = capture(
      "(set-logic QF_FFA)"
      "(define-sort FF5 () (_ FiniteField 5))"
      "(define-sort FF9 () (_ FiniteField 3 2))"
      "(assert (= (as ff1 FF5) (as ff1 FF9)))");
  CHECK(e.kind() == ScriptError::Kind::Sort);

  CHECK_THROWS_AS(
      check_assert(kDeclXY + "(declare-fun w () (_ FiniteField 7))",
                   "(= (ff.add x w) x)"),
      ScriptError);
  CHECK_THROWS_AS(check_assert(kDeclXY, "(= x true)"), ScriptError);
  CHECK_THROWS_AS(check_assert(kDeclXY, "(and x true)"), ScriptError);
  CHECK_THROWS_AS(check_assert(kDeclXY, "(not x)"), ScriptError);
  CHECK_THROWS_AS(check_assert(kDeclXY, "(ff.add x true)"), ScriptError);
  CHECK_THROWS_AS(check_assert(kDeclXY, "(ite true x true)"), ScriptError);
}

TEST_CASE("indexed and annotated literals are the same typed term") {
  const std::string prelude = "(define-sort FF5 () (_ FiniteField 5))";
  Term a = check_assert(prelude, "(= (_ ff1 5) (_ ff1 5))").children()[0];
  Term b = check_assert(prelude, "(= (as ff1 FF5) (as ff1 FF5))").children()[0];
  Term c = check_assert(prelude, "(= (as ff1 (_ FiniteField 5)) (as ff1 FF5))")
               .children()[0];
  CHECK(a == b);
  CHECK(b == c);
  CHECK(a.kind() == TermKind::Literal);
  CHECK(a.value().coeffs() == std::vector<Integer>{1});

  Term ext = check_assert("(define-sort FF9 () (_ FiniteField 3 2))",
                          "(= (_ ff1.2 3 2) (as ff1.2 FF9))");
  CHECK(ext.children()[0] == ext.children()[1]);
}

TEST_CASE("literals normalize at parse time") {
  Term t = check_assert("", "(= (_ ff10 5) (_ ff0 5))");
  CHECK(t.children()[0].value().is_zero());
  CHECK(t.children()[0] == t.children()[1]);

  Term u = check_assert("", "(= (_ ff1.0.-1.0.0 3 6) (_ ff1.0.2 3 6))");
  CHECK(u.children()[0].value().coeffs() == std::vector<Integer>{1, 0, -1});
  CHECK(u.children()[0] == u.children()[1]);
}

TEST_CASE("literal coefficient counts are checked against the sort") {
  CHECK(capture("(set-logic QF_FFA)(assert (= (_ ff1.2 5) (_ ff1.2 5)))")
            .kind() == ScriptError::Kind::Sort);
  CHECK(capture("(set-logic QF_FFA)(assert (= (_ ff1.2.0 3 2) (_ ff0 3 2)))")
            .kind() == ScriptError::Kind::Sort);
}

TEST_CASE("bare literals and numerals are not terms") {
  ScriptError e = capture("(set-logic QF_FFA)(assert (= ff1 ff1))");
  CHECK(e.kind() == ScriptError::Kind::Sort);
  CHECK(std::string(e.what()).find("(_ ff1") != std::string::npos);
  CHECK(capture("(set-logic QF_FFA)(assert (= 1 1))").kind() ==
        ScriptError::Kind::Sort);
}

TEST_CASE("unknown symbols carry the offending position") {
  ScriptError e = capture("(set-logic QF_FFA)\n(assert (= nope nope))");
  CHECK(e.kind() == ScriptError::Kind::Sort);
  CHECK(e.pos() == SourcePos{2, 12});
  CHECK(std::string(e.what()).find("nope") != std::string::npos);
}

TEST_CASE("equality chains expand to adjacent pairs") {
  Term t = check_assert(kDeclXY + "(declare-fun z () FF5)", "(= x y z)");
  REQUIRE(t.kind() == TermKind::And);
  REQUIRE(t.children().size() == 2);
  CHECK(t.children()[0].children()[0].name() == "x");
  CHECK(t.children()[0].children()[1].name() == "y");
  CHECK(t.children()[1].children()[0].name() == "y");
  CHECK(t.children()[1].children()[1].name() == "z");
}

TEST_CASE("distinct expands to pairwise disequalities") {
  Term two = check_assert(kDeclXY, "(distinct x y)");
  CHECK(two.kind() == TermKind::Not);

  Term three = check_assert(kDeclXY + "(declare-fun z () FF5)",
                            "(distinct x y z)");
  REQUIRE(three.kind() == TermKind::And);
  CHECK(three.children().size() == 3);
  for (const Term& d : three.children()) CHECK(d.kind() == TermKind::Not);
}

TEST_CASE("implication folds right, xor folds left") {
  Term imp = check_assert(kDeclXY, "(=> (= x x) (= y y) (= x y))");
  REQUIRE(imp.kind() == TermKind::Implies);
  CHECK(imp.children()[1].kind() == TermKind::Implies);

  Term x = check_assert(kDeclXY, "(xor (= x x) (= y y) (= x y))");
  REQUIRE(x.kind() == TermKind::Xor);
  CHECK(x.children()[0].kind() == TermKind::Xor);
}

TEST_CASE("let binds in parallel and shadows") {
  Term t = check_assert(kDeclXY, "(let ((a x) (b y)) (= a b))");
  REQUIRE(t.kind() == TermKind::Let);
  CHECK(t.bindings().size() == 2);
  CHECK(t.children()[0].children()[0].kind() == TermKind::Var);

  // The bound term of b sees the outer a (a constant here), not the binding.
  Term u = check_assert(kDeclXY + "(declare-fun a () FF5)",
                        "(let ((a y) (b a)) (= a b))");
  CHECK(u.bindings()[1].second.kind() == TermKind::Const);
  CHECK(u.bindings()[1].second.name() == "a");

  // Inner lets shadow outer lets.
  Term v = check_assert(kDeclXY, "(let ((a x)) (let ((a y)) (= a a)))");
  CHECK(v.children()[0].kind() == TermKind::Let);

  CHECK_THROWS_AS(check_assert(kDeclXY, "(let ((a x) (a y)) (= a a))"),
                  ScriptError);
  CHECK_THROWS_AS(check_assert(kDeclXY, "(let ((ff1 x)) (= ff1 ff1))"),
                  ScriptError);
  CHECK_THROWS_AS(check_assert(kDeclXY, "(let ((ite x)) (= ite ite))"),
                  ScriptError);
  CHECK_THROWS_AS(check_assert(kDeclXY, "(let () (= x y))"), ScriptError);
}

TEST_CASE("let-bound names do not leak") {
  CHECK_THROWS_AS(
      check_assert(kDeclXY, "(and (let ((a x)) (= a a)) (= a a))"),
      ScriptError);
}

TEST_CASE("get-value takes field terms only") {
  TypedScript s = check(
      "(set-logic QF_FFA)" + kDeclXY +
      "(assert (= x y))(check-sat)(get-value (x (ff.add x y)))");
  CHECK(s.commands.back().kind == TypedCommand::Kind::GetValue);
  CHECK(s.commands.back().terms.size() == 2);

  CHECK(capture("(set-logic QF_FFA)" + kDeclXY +
                "(check-sat)(get-value ((= x y)))")
            .kind() == ScriptError::Kind::Sort);
}

TEST_CASE("aliases resolve to structurally equal sorts") {
  TypedScript s = check(
      "(set-logic QF_FFA)"
      "(define-sort FF9 () (_ FiniteField 3 2))"
      "(define-sort Also9 () FF9)"
      "(declare-fun a () FF9)(declare-fun b () Also9)"
      "(assert (= a b))");
  CHECK(s.declarations[0].sort == s.declarations[1].sort);

  CHECK(capture("(set-logic QF_FFA)"
                "(define-sort S () (_ FiniteField 5))"
                "(define-sort S () (_ FiniteField 5))")
            .kind() == ScriptError::Kind::Sort);
  CHECK(capture("(set-logic QF_FFA)(define-sort Bool () (_ FiniteField 5))")
            .kind() == ScriptError::Kind::Sort);
}

TEST_CASE("commands after exit are rejected") {
  CHECK(capture("(set-logic QF_FFA)(exit)(check-sat)").kind() ==
        ScriptError::Kind::Sort);
}

TEST_CASE("sorts cannot appear in term position") {
  CHECK(capture("(set-logic QF_FFA)(assert (= (_ FiniteField 5) 1))").kind() ==
        ScriptError::Kind::Sort);
}

TEST_CASE("printer spells symbols and model sorts canonically") {
  CHECK(smt::print_symbol("x") == "x");
  CHECK(smt::print_symbol("@recip0") == "@recip0");
  CHECK(smt::print_symbol("odd name") == "|odd name|");
  CHECK(smt::print_symbol("0start") == "|0start|");

  TypedScript s = check(
      "(set-logic QF_FFA)(declare-fun x () (_ FiniteField 5))");
  CHECK(smt::print_command(s.commands[1]) ==
        "(declare-fun x () (_ FiniteField 5))");
}

TEST_CASE("printed scripts reparse to the same typed script") {
  const std::string text =
      "(set-logic QF_FFA)\n"
      "(set-info :status \"unknown\")\n"
      "(define-sort FF5 () (_ FiniteField 5))\n"
      "(define-sort FF9 () (_ FiniteField 3 2))\n"
      "(declare-fun x () FF5)\n"
      "(declare-fun y () FF5)\n"
      "(declare-fun |odd name| () FF9)\n"
      "(assert (= (ff.add x y (_ ff2 5)) (ff.neg (ff.div x y))))\n"
      "(assert (let ((a (ff.mul x x))) (=> (= a x) (distinct a y) (= a a))))\n"
      "(assert (xor (ite (= x y) true false) (= |odd name| (as ff1.2 FF9))))\n"
      "(assert (= (ff.recip (ff.sub x y)) (_ ff-2 5)))\n"
      "(check-sat)\n"
      "(get-model)\n"
      "(get-value (x (ff.add x y)))\n"
      "(exit)\n";
  ConwayCache cache;
  SortBuilder sorts(cache);
  TypedScript first = smt::check_script_text(text, sorts);
  std::string printed = smt::print_script(first);
  TypedScript second = smt::check_script_text(printed, sorts);
  CHECK(first == second);
  CHECK(smt::print_script(second) == printed);
}

TEST_CASE("round-trip survives a fresh sort builder") {
  const std::string text =
      "(set-logic QF_FFA)"
      "(declare-fun u () (_ FiniteField 3 2))"
      "(assert (= u (_ ff-1.1 3 2)))";
  ConwayCache c1;
  SortBuilder s1(c1);
  TypedScript first = smt::check_script_text(text, s1);
  ConwayCache c2;
  SortBuilder s2(c2);
  TypedScript second = smt::check_script_text(smt::print_script(first), s2);
  CHECK(first == second);
}
