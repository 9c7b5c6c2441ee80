// Surface syntax: a small Coq-flavored vernacular.
//
//   Inductive d (p:P) : arity := c : T | ... [with d2 ...] .
//   Definition x [: T] := t .
//   Fixpoint f / K : T := t [with g / K : T := t]* .   (K counts binders up
//                                                       to and including the
//                                                       recursive one, 1-based)
//   Check t [: T] .        Assert t = u : T .      Eval t .
//   Model term : type depth K .
//
// Terms: Prop, TypeN, forall (x:T), U | fun (x:T) => u | let x := t [: T] in u
// | application by juxtaposition | match e as y in d params indexvars return Q
//   with | C v* => h ... end | fix f / K : A := t [with ...] for f.

#pragma once

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "cck/pretty.hpp"
#include "cck/syntax.hpp"

namespace cck {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line, int col)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
        line(line),
        col(col) {}
  int line;
  int col;
};

struct ItemInductive {
  BlockPtr block;
};
struct ItemDefinition {
  std::string name;
  TermPtr type;  // may be null
  TermPtr body;
};
struct ItemFixpoint {
  std::vector<FixDef> defs;
};
struct ItemCheck {
  TermPtr term;
  TermPtr type;  // may be null
};
struct ItemAssert {
  TermPtr lhs;
  TermPtr rhs;
  TermPtr type;
};
struct ItemEval {
  TermPtr term;
};
struct ItemModel {
  std::string term_name;
  std::string type_name;
  int depth = 0;
};

struct VernacularItem {
  std::variant<ItemInductive, ItemDefinition, ItemFixpoint, ItemCheck, ItemAssert, ItemEval,
               ItemModel>
      data;
  int line = 0;
  int col = 0;
};

std::vector<VernacularItem> parse_file(const std::string& text);

// Standalone term, with the given blocks' names resolving to references.
TermPtr parse_term(const std::string& text, const std::vector<BlockPtr>& blocks = {});

}  // namespace cck
