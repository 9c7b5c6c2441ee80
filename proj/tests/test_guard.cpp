#include "doctest.h"

#include <string>

#include "cck/guard.hpp"
#include "helpers.hpp"

using namespace cck;
using testing::load_program;

namespace {

const ReductionConfig cfg{};

const char* kNat = "Inductive nat : Type0 := O : nat | S : nat -> nat.\n";
const char* kTreeForest =
    "Inductive tree (A : Type0) : Type0 := node : A -> forest A -> tree A\n"
    "with forest (A : Type0) : Type0 := emptyf : forest A\n"
    "  | consf : tree A -> forest A -> forest A.\n";

// Parses `text` as declarations, then returns the fix node of `name`.
const FixT& fix_of(const testing::Loaded& ld, const std::string& name) {
  const DefEntry* d = ld.ctx.find_def(name);
  REQUIRE(d != nullptr);
  const FixT* fx = d->body->as<FixT>();
  REQUIRE(fx != nullptr);
  return *fx;
}

std::string guard_error(const std::string& decls, const std::string& fixterm) {
  auto ld = load_program(decls);
  TermPtr t;
  try {
    t = parse_term(fixterm, ld.blocks);
  } catch (const ParseError& e) {
    FAIL("parse: " << e.what());
    return "";
  }
  const FixT* fx = t->as<FixT>();
  REQUIRE(fx != nullptr);
  try {
    check_fix_block(ld.ctx, *fx, cfg);
  } catch (const TypeError& e) {
    return e.diag().rule;
  }
  return "";
}

}  // namespace

TEST_CASE("constraint weakening") {
  CHECK(less_of(Constraint::Empty) == Constraint::Empty);
  CHECK(less_of(Constraint::Equal) == Constraint::Smaller);
  CHECK(less_of(Constraint::Smaller) == Constraint::Smaller);
}

TEST_CASE("structural recursion on the match binder is accepted") {
  auto ld = load_program(std::string(kNat) +
                         "Fixpoint plus / 2 : forall (m : nat) (n : nat), nat :=\n"
                         "  fun (m : nat) (n : nat) =>\n"
                         "    match n as y in nat return nat with\n"
                         "    | O => m\n"
                         "    | S p => S (plus m p)\n"
                         "    end.\n");
  check_fix_block(ld.ctx, fix_of(ld, "plus"), cfg);
}

TEST_CASE("mutual recursion through both blocks is accepted") {
  auto ld = load_program(
      std::string(kNat) + kTreeForest +
      "Fixpoint Tsize / 2 : forall (A : Type0) (t : tree A), nat :=\n"
      "  fun (A : Type0) (t : tree A) =>\n"
      "    match t as y in tree A return nat with\n"
      "    | node a f => S (Fsize A f)\n"
      "    end\n"
      "with Fsize / 2 : forall (A : Type0) (f : forest A), nat :=\n"
      "  fun (A : Type0) (f : forest A) =>\n"
      "    match f as y in forest A return nat with\n"
      "    | emptyf => O\n"
      "    | consf t2 f2 => S (Tsize A t2)\n"
      "    end.\n");
  check_fix_block(ld.ctx, fix_of(ld, "Tsize"), cfg);
  check_fix_block(ld.ctx, fix_of(ld, "Fsize"), cfg);
}

TEST_CASE("nested matches refine the same constraint") {
  // Recursion two constructors down is still smaller.
  auto ld = load_program(std::string(kNat));
  TermPtr t = parse_term(
      "fix half / 1 : forall (n : nat), nat :=\n"
      "  fun (n : nat) =>\n"
      "    match n as y in nat return nat with\n"
      "    | O => O\n"
      "    | S p =>\n"
      "      match p as w in nat return nat with\n"
      "      | O => O\n"
      "      | S q => S (half q)\n"
      "      end\n"
      "    end for half",
      ld.blocks);
  check_fix_block(ld.ctx, *t->as<FixT>(), cfg);
}

TEST_CASE("calling with the recursive binder itself is refused") {
  CHECK(guard_error(kNat,
                    "fix f / 1 : forall (n : nat), nat := fun (n : nat) => f n for f") ==
        "F guard");
}

TEST_CASE("rebuilding a constructor around a smaller variable is refused") {
  CHECK(guard_error(kNat,
                    "fix f / 1 : forall (n : nat), nat :=\n"
                    "  fun (n : nat) =>\n"
                    "    match n as y in nat return nat with\n"
                    "    | O => O\n"
                    "    | S p => f (S p)\n"
                    "    end for f") == "F guard");
}

TEST_CASE("an unrelated variable at the recursive position is refused") {
  CHECK(guard_error(kNat,
                    "fix f / 2 : forall (m : nat) (n : nat), nat :=\n"
                    "  fun (m : nat) (n : nat) =>\n"
                    "    match n as y in nat return nat with\n"
                    "    | O => O\n"
                    "    | S p => f p m\n"
                    "    end for f") == "F guard");
}

TEST_CASE("mutual recursion on a non-descendant binder is refused") {
  CHECK(guard_error(std::string(kNat) + kTreeForest,
                    "fix Tsize / 2 : forall (A : Type0) (t : tree A), nat :=\n"
                    "  fun (A : Type0) (t : tree A) =>\n"
                    "    match t as y in tree A return nat with\n"
                    "    | node a f => S (Tsize A t)\n"
                    "    end\n"
                    "with Fsize / 2 : forall (A : Type0) (f : forest A), nat :=\n"
                    "  fun (A : Type0) (f : forest A) =>\n"
                    "    match f as y in forest A return nat with\n"
                    "    | emptyf => O\n"
                    "    | consf t2 f2 => S (Tsize A t2)\n"
                    "    end for Tsize") == "F guard");
}

TEST_CASE("the recursive argument must be of an inductive type") {
  CHECK(guard_error("",
                    "fix g / 1 : forall (p : Prop), Prop := fun (p : Prop) => p for g") ==
        "F guard");
}

TEST_CASE("matching on something other than the recursive argument gives no license") {
  // The match scrutinee is a constant, so its binders carry no constraint.
  CHECK(guard_error(std::string(kNat) +
                        "Definition two := S (S O).\n",
                    "fix f / 1 : forall (n : nat), nat :=\n"
                    "  fun (n : nat) =>\n"
                    "    match two as y in nat return nat with\n"
                    "    | O => O\n"
                    "    | S p => f p\n"
                    "    end for f") == "F guard");
}
