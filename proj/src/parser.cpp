#include "cck/parser.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <utility>

#include "cck/reduction.hpp"

namespace cck {
namespace {

enum class Tok {
  Ident,
  Nat,
  LParen,
  RParen,
  Colon,
  ColonEq,
  Dot,
  Bar,
  Arrow,
  DArrow,
  Comma,
  Eq,
  Slash,
  Underscore,
  Eof,
};

struct Token {
  Tok kind = Tok::Eof;
  std::string text;
  long long nat = 0;
  int line = 1;
  int col = 1;
};

bool ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9') || c == '\''; }

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  std::size_t i = 0;
  int line = 1, col = 1;
  auto advance = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j) {
      if (text[i + j] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += k;
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '(' && i + 1 < text.size() && text[i + 1] == '*') {
      int start_line = line, start_col = col;
      advance(2);
      int depth = 1;
      while (depth > 0) {
        if (i + 1 >= text.size()) throw ParseError("unterminated comment", start_line, start_col);
        if (text[i] == '(' && text[i + 1] == '*') {
          ++depth;
          advance(2);
        } else if (text[i] == '*' && text[i + 1] == ')') {
          --depth;
          advance(2);
        } else {
          advance(1);
        }
      }
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      t.text = text.substr(i, j - i);
      t.kind = t.text == "_" ? Tok::Underscore : Tok::Ident;
      advance(j - i);
      out.push_back(std::move(t));
      continue;
    }
    if (c >= '0' && c <= '9') {
      std::size_t j = i;
      while (j < text.size() && text[j] >= '0' && text[j] <= '9') ++j;
      t.text = text.substr(i, j - i);
      t.kind = Tok::Nat;
      t.nat = std::stoll(t.text);
      advance(j - i);
      out.push_back(std::move(t));
      continue;
    }
    auto sym = [&](Tok k, std::size_t width, const char* s) {
      t.kind = k;
      t.text = s;
      advance(width);
      out.push_back(t);
    };
    switch (c) {
      case '(':
        sym(Tok::LParen, 1, "(");
        continue;
      case ')':
        sym(Tok::RParen, 1, ")");
        continue;
      case ':':
        if (i + 1 < text.size() && text[i + 1] == '=') {
          sym(Tok::ColonEq, 2, ":=");
        } else {
          sym(Tok::Colon, 1, ":");
        }
        continue;
      case '.':
        sym(Tok::Dot, 1, ".");
        continue;
      case '|':
        sym(Tok::Bar, 1, "|");
        continue;
      case ',':
        sym(Tok::Comma, 1, ",");
        continue;
      case '/':
        sym(Tok::Slash, 1, "/");
        continue;
      case '=':
        if (i + 1 < text.size() && text[i + 1] == '>') {
          sym(Tok::DArrow, 2, "=>");
        } else {
          sym(Tok::Eq, 1, "=");
        }
        continue;
      case '-':
        if (i + 1 < text.size() && text[i + 1] == '>') {
          sym(Tok::Arrow, 2, "->");
          continue;
        }
        throw ParseError("unexpected character '-'", line, col);
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
  }
  Token eof;
  eof.kind = Tok::Eof;
  eof.text = "<eof>";
  eof.line = line;
  eof.col = col;
  out.push_back(std::move(eof));
  return out;
}

const std::set<std::string> kReserved = {
    "Inductive", "Definition", "Fixpoint", "Check", "Assert", "Eval",  "Model",
    "forall",    "fun",        "let",      "in",    "match",  "as",    "return",
    "with",      "end",        "fix",      "for",   "depth",
};

bool sort_name(const std::string& s, Sort* out) {
  if (s == "Prop") {
    *out = Sort::mk_prop();
    return true;
  }
  if (s.size() > 4 && s.compare(0, 4, "Type") == 0) {
    for (std::size_t i = 4; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    *out = Sort::mk_type(std::stoi(s.substr(4)));
    return true;
  }
  return false;
}

struct Parser {
  std::vector<Token> toks;
  std::size_t pos = 0;
  std::map<std::string, BlockPtr> block_names;

  const Token& peek() const { return toks[pos]; }
  const Token& peek2() const { return toks[pos + 1 < toks.size() ? pos + 1 : toks.size() - 1]; }
  Token next() { return toks[pos++]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " (found '" + peek().text + "')", peek().line, peek().col);
  }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_kw(const std::string& kw) const { return peek().kind == Tok::Ident && peek().text == kw; }
  void expect(Tok k, const char* what) {
    if (!at(k)) fail(std::string("expected ") + what);
    ++pos;
  }
  void expect_kw(const std::string& kw) {
    if (!at_kw(kw)) fail("expected '" + kw + "'");
    ++pos;
  }
  std::string ident() {
    if (!at(Tok::Ident)) fail("expected an identifier");
    if (kReserved.count(peek().text)) fail("expected an identifier");
    return next().text;
  }
  std::string ident_or_wild() {
    if (at(Tok::Underscore)) {
      ++pos;
      return "_";
    }
    return ident();
  }
  long long nat_lit() {
    if (!at(Tok::Nat)) fail("expected a number");
    return next().nat;
  }

  TermPtr name_term(const std::string& name) {
    auto it = block_names.find(name);
    if (it != block_names.end()) return ind_ref(it->second, name);
    return var(name);
  }

  bool atom_start() const {
    if (at(Tok::LParen)) return true;
    if (!at(Tok::Ident)) return false;
    const std::string& s = peek().text;
    Sort dummy;
    return !kReserved.count(s) || sort_name(s, &dummy);
  }

  // ----- terms -----

  TermPtr term() {
    if (at_kw("forall")) {
      ++pos;
      auto binders = binder_list();
      expect(Tok::Comma, "','");
      return rebuild_pis(binders, term());
    }
    if (at_kw("fun")) {
      ++pos;
      auto binders = binder_list();
      expect(Tok::DArrow, "'=>'");
      return rebuild_lams(binders, term());
    }
    if (at_kw("let")) {
      ++pos;
      std::string x = ident_or_wild();
      expect(Tok::ColonEq, "':='");
      TermPtr def = term();
      TermPtr def_type;
      if (at(Tok::Colon)) {
        ++pos;
        def_type = term();
      }
      expect_kw("in");
      return let_in(x, def, def_type, term());
    }
    if (at_kw("match")) {
      ++pos;
      return match_term();
    }
    if (at_kw("fix")) {
      ++pos;
      return fix_term();
    }
    TermPtr lhs = app_chain();
    if (at(Tok::Arrow)) {
      ++pos;
      return arrow(lhs, term());
    }
    return lhs;
  }

  // `(x y : T)` groups, or a single bare `x : T`.
  std::vector<OpenedBinder> binder_list() {
    std::vector<OpenedBinder> out;
    if ((at(Tok::Ident) || at(Tok::Underscore)) && peek2().kind == Tok::Colon) {
      std::string x = ident_or_wild();
      ++pos;  // ':'
      out.push_back({x, term()});
      return out;
    }
    while (at(Tok::LParen)) {
      ++pos;
      std::vector<std::string> names;
      names.push_back(ident_or_wild());
      while (at(Tok::Ident) || at(Tok::Underscore)) names.push_back(ident_or_wild());
      expect(Tok::Colon, "':'");
      TermPtr ty = term();
      expect(Tok::RParen, "')'");
      for (auto& n : names) out.push_back({n, ty});
    }
    if (out.empty()) fail("expected a binder");
    return out;
  }

  TermPtr app_chain() {
    TermPtr head = atom();
    while (atom_start()) head = app(head, atom());
    return head;
  }

  TermPtr atom() {
    if (at(Tok::LParen)) {
      ++pos;
      TermPtr t = term();
      expect(Tok::RParen, "')'");
      return t;
    }
    if (at(Tok::Ident)) {
      Sort s;
      if (sort_name(peek().text, &s)) {
        ++pos;
        return sort(s);
      }
      if (kReserved.count(peek().text)) fail("expected a term");
      return name_term(next().text);
    }
    fail("expected a term");
  }

  // After the `match` keyword.
  TermPtr match_term() {
    TermPtr scrut = term();
    expect_kw("as");
    std::string y = ident_or_wild();
    expect_kw("in");
    if (!at(Tok::Ident)) fail("expected an inductive type name");
    Token dtok = peek();
    std::string dname = ident();
    auto bit = block_names.find(dname);
    if (bit == block_names.end() || !bit->second->ind_index(dname))
      throw ParseError("'" + dname + "' is not an inductive type", dtok.line, dtok.col);
    BlockPtr block = bit->second;
    int n = block->param_count;
    TermPtr decl_ty = *block->decl_type(dname);
    int total = count_pis(decl_ty);
    int idx_count = total - n;

    std::vector<TermPtr> params;
    for (int i = 0; i < n; ++i) params.push_back(atom());
    std::vector<std::string> idx_names;
    for (int i = 0; i < idx_count; ++i) idx_names.push_back(ident_or_wild());
    expect_kw("return");
    TermPtr ret = term();
    expect_kw("with");

    std::vector<int> ctors = ctors_of_inductive(*block, dname);
    std::map<std::string, int> slot_of;
    for (std::size_t k = 0; k < ctors.size(); ++k)
      slot_of[block->con_decls[ctors[k]].first] = static_cast<int>(k);

    std::vector<std::pair<int, TermPtr>> parsed;
    while (at(Tok::Bar)) {
      ++pos;
      Token ctok = peek();
      std::string cname = ident();
      auto sit = slot_of.find(cname);
      if (sit == slot_of.end())
        throw ParseError("'" + cname + "' is not a constructor of " + dname, ctok.line, ctok.col);
      const TermPtr& cty_raw = *block->decl_type(cname);
      int arg_count = count_pis(cty_raw) - n;
      std::vector<std::string> pat;
      for (int j = 0; j < arg_count; ++j) pat.push_back(ident_or_wild());
      expect(Tok::DArrow, "'=>'");
      TermPtr body = term();

      TermPtr cur = replace_ind_names(cty_raw, block);
      for (int i = 0; i < n; ++i) {
        const auto* p = cur->as<PiT>();
        if (!p) throw ParseError("constructor type of '" + cname + "' is not a product chain",
                                 ctok.line, ctok.col);
        cur = open_binder(p->codomain, params[i]);
      }
      std::vector<OpenedBinder> binders;
      for (int j = 0; j < arg_count; ++j) {
        const auto* p = cur->as<PiT>();
        if (!p) throw ParseError("constructor type of '" + cname + "' is not a product chain",
                                 ctok.line, ctok.col);
        binders.push_back({pat[j], p->domain});
        cur = open_binder(p->codomain, var(pat[j]));
      }
      parsed.emplace_back(sit->second, rebuild_lams(binders, body));
    }
    expect_kw("end");

    std::stable_sort(parsed.begin(), parsed.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<TermPtr> branches;
    for (auto& [slot, b] : parsed) branches.push_back(b);

    // Motive: fun (indices...) (y : d params indices) => ret.
    TermPtr cur = decl_ty;
    for (int i = 0; i < n; ++i) {
      const auto* p = cur->as<PiT>();
      if (!p)
        throw ParseError("declared type of '" + dname + "' is not a product chain", dtok.line,
                         dtok.col);
      cur = open_binder(p->codomain, params[i]);
    }
    std::vector<OpenedBinder> motive_binders;
    std::vector<TermPtr> y_args = params;
    for (int i = 0; i < idx_count; ++i) {
      const auto* p = cur->as<PiT>();
      if (!p)
        throw ParseError("declared type of '" + dname + "' is not a product chain", dtok.line,
                         dtok.col);
      motive_binders.push_back({idx_names[i], p->domain});
      cur = open_binder(p->codomain, var(idx_names[i]));
      y_args.push_back(var(idx_names[i]));
    }
    motive_binders.push_back({y, app(ind_ref(block, dname), y_args)});
    return case_of(scrut, rebuild_lams(motive_binders, ret), std::move(branches));
  }

  // After the `fix` keyword. A trailing `for f` selects the definition;
  // without it the first one is used.
  TermPtr fix_term() {
    std::vector<FixDef> defs;
    defs.push_back(fix_def());
    while (at_kw("with")) {
      ++pos;
      defs.push_back(fix_def());
    }
    int index = 0;
    if (at_kw("for")) {
      ++pos;
      Token ftok = peek();
      std::string sel = ident();
      index = -1;
      for (std::size_t i = 0; i < defs.size(); ++i)
        if (defs[i].name == sel) index = static_cast<int>(i);
      if (index < 0)
        throw ParseError("'" + sel + "' is not defined by this fix", ftok.line, ftok.col);
    }
    return fix(index, std::move(defs));
  }

  FixDef fix_def() {
    FixDef d;
    Token ntok = peek();
    d.name = ident();
    expect(Tok::Slash, "'/'");
    long long k = nat_lit();
    if (k < 1)
      throw ParseError("the recursive argument position must be at least 1", ntok.line, ntok.col);
    d.rec_arg = static_cast<int>(k - 1);
    expect(Tok::Colon, "':'");
    d.type = term();
    expect(Tok::ColonEq, "':='");
    d.body = term();
    return d;
  }

  // ----- vernacular -----

  struct IndHead {
    std::string name;
    std::vector<OpenedBinder> params;
    TermPtr arity;
    std::vector<std::pair<std::string, TermPtr>> ctors;
  };

  VernacularItem item_inductive() {
    std::vector<IndHead> heads;
    for (;;) {
      IndHead h;
      h.name = ident();
      if (at(Tok::LParen)) h.params = binder_list();
      expect(Tok::Colon, "':'");
      h.arity = term();
      expect(Tok::ColonEq, "':='");
      if (!at(Tok::Dot) && !at_kw("with")) {
        if (at(Tok::Bar)) ++pos;
        for (;;) {
          std::string cname = ident();
          expect(Tok::Colon, "':'");
          h.ctors.emplace_back(cname, term());
          if (!at(Tok::Bar)) break;
          ++pos;
        }
      }
      heads.push_back(std::move(h));
      if (at_kw("with")) {
        ++pos;
        continue;
      }
      break;
    }
    expect(Tok::Dot, "'.'");

    InductiveBlock blk;
    blk.param_count = static_cast<int>(heads[0].params.size());
    for (auto& h : heads) blk.ind_decls.emplace_back(h.name, rebuild_pis(h.params, h.arity));
    for (auto& h : heads)
      for (auto& [cname, cty] : h.ctors)
        blk.con_decls.emplace_back(cname, rebuild_pis(h.params, cty));
    BlockPtr bp = std::make_shared<InductiveBlock>(std::move(blk));
    for (auto& [nm, ty] : bp->ind_decls) block_names[nm] = bp;
    for (auto& [nm, ty] : bp->con_decls) block_names[nm] = bp;
    return VernacularItem{ItemInductive{bp}};
  }

  std::vector<VernacularItem> file() {
    std::vector<VernacularItem> items;
    while (!at(Tok::Eof)) {
      Token head = peek();
      VernacularItem item;
      if (at_kw("Inductive")) {
        ++pos;
        item = item_inductive();
      } else if (at_kw("Definition")) {
        ++pos;
        ItemDefinition d;
        d.name = ident();
        if (at(Tok::Colon)) {
          ++pos;
          d.type = term();
        }
        expect(Tok::ColonEq, "':='");
        d.body = term();
        expect(Tok::Dot, "'.'");
        item.data = std::move(d);
      } else if (at_kw("Fixpoint")) {
        ++pos;
        ItemFixpoint f;
        f.defs.push_back(fix_def());
        while (at_kw("with")) {
          ++pos;
          f.defs.push_back(fix_def());
        }
        expect(Tok::Dot, "'.'");
        item.data = std::move(f);
      } else if (at_kw("Check")) {
        ++pos;
        ItemCheck c;
        c.term = term();
        if (at(Tok::Colon)) {
          ++pos;
          c.type = term();
        }
        expect(Tok::Dot, "'.'");
        item.data = std::move(c);
      } else if (at_kw("Assert")) {
        ++pos;
        ItemAssert a;
        a.lhs = term();
        expect(Tok::Eq, "'='");
        a.rhs = term();
        expect(Tok::Colon, "':'");
        a.type = term();
        expect(Tok::Dot, "'.'");
        item.data = std::move(a);
      } else if (at_kw("Eval")) {
        ++pos;
        ItemEval e;
        e.term = term();
        expect(Tok::Dot, "'.'");
        item.data = std::move(e);
      } else if (at_kw("Model")) {
        ++pos;
        ItemModel m;
        m.term_name = ident();
        expect(Tok::Colon, "':'");
        m.type_name = ident();
        expect_kw("depth");
        m.depth = static_cast<int>(nat_lit());
        expect(Tok::Dot, "'.'");
        item.data = std::move(m);
      } else {
        fail("expected a command");
      }
      item.line = head.line;
      item.col = head.col;
      items.push_back(std::move(item));
    }
    return items;
  }
};

}  // namespace

std::vector<VernacularItem> parse_file(const std::string& text) {
  Parser p;
  p.toks = lex(text);
  return p.file();
}

TermPtr parse_term(const std::string& text, const std::vector<BlockPtr>& blocks) {
  Parser p;
  p.toks = lex(text);
  for (auto& b : blocks) {
    for (auto& [nm, ty] : b->ind_decls) p.block_names[nm] = b;
    for (auto& [nm, ty] : b->con_decls) p.block_names[nm] = b;
  }
  TermPtr t = p.term();
  if (!p.at(Tok::Eof)) p.fail("trailing input after term");
  return t;
}

}  // namespace cck
