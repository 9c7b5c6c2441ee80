#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace cck {

// Sorts: Prop and the predicative hierarchy Type0, Type1, ...
struct Sort {
  bool prop = false;
  int level = 0;  // meaningful only when !prop

  static Sort mk_prop() { return Sort{true, 0}; }
  static Sort mk_type(int i) { return Sort{false, i}; }

  bool operator==(const Sort& o) const {
    return prop == o.prop && (prop || level == o.level);
  }
  bool operator!=(const Sort& o) const { return !(*this == o); }
};

class Term;
using TermPtr = std::shared_ptr<const Term>;

struct InductiveBlock;
using BlockPtr = std::shared_ptr<const InductiveBlock>;

// Term variants. Binders are nameless (de Bruijn); the hint is kept for
// printing only and ignored by alpha_eq. Inductive blocks and fix nodes keep
// their internal names, which are rigid and scoped to the node.
struct VarT {
  std::string name;
};
struct BoundT {
  int index = 0;
  std::string hint;
};
struct SortT {
  Sort sort;
};
struct PiT {
  std::string hint;
  TermPtr domain;
  TermPtr codomain;  // Bound 0 = binder
};
struct LamT {
  std::string hint;
  TermPtr domain;
  TermPtr body;
};
struct LetT {
  std::string hint;
  TermPtr def;
  TermPtr def_type;  // may be null: the kernel infers it
  TermPtr body;
};
struct AppT {
  TermPtr fn;
  TermPtr arg;
};
struct CaseT {
  TermPtr scrutinee;
  TermPtr motive;  // lam telescope over the indices and the scrutinee
  std::vector<TermPtr> branches;
};
struct IndRefT {
  BlockPtr block;
  std::string name;  // in dom(ind_decls) or dom(con_decls)
};
struct FixDef {
  std::string name;
  int rec_arg = 0;  // 0-based position of the decreasing argument
  TermPtr type;
  TermPtr body;
};
struct FixT {
  int index = 0;
  std::vector<FixDef> defs;
};

using TermData =
    std::variant<VarT, BoundT, SortT, PiT, LamT, LetT, AppT, CaseT, IndRefT, FixT>;

class Term {
 public:
  explicit Term(TermData d) : data_(std::move(d)) {}
  const TermData& data() const { return data_; }

  template <class T>
  const T* as() const {
    return std::get_if<T>(&data_);
  }
  template <class T>
  bool is() const {
    return std::holds_alternative<T>(data_);
  }

 private:
  TermData data_;
};

// A mutually inductive block Ind_n{ind_decls := con_decls}. Inside the
// declared types, references to the block's own names are plain variables.
struct InductiveBlock {
  int param_count = 0;
  std::vector<std::pair<std::string, TermPtr>> ind_decls;
  std::vector<std::pair<std::string, TermPtr>> con_decls;

  std::set<std::string> dom() const;
  std::optional<int> ind_index(const std::string& name) const;   // 0-based
  std::optional<int> ctor_index(const std::string& name) const;  // 0-based in con_decls
  const TermPtr* decl_type(const std::string& name) const;
  bool has_name(const std::string& name) const;
};

bool block_eq(const InductiveBlock& a, const InductiveBlock& b);

// Context entries: assumptions, definitions, inductive blocks.
struct AssumEntry {
  std::string name;
  TermPtr type;
};
struct DefEntry {
  std::string name;
  TermPtr body;
  TermPtr type;
};
struct IndEntry {
  BlockPtr block;
};
using ContextEntry = std::variant<AssumEntry, DefEntry, IndEntry>;

class Context {
 public:
  const std::vector<ContextEntry>& entries() const { return entries_; }
  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  void push(ContextEntry e) { entries_.push_back(std::move(e)); }
  void pop() { entries_.pop_back(); }

  bool has_name(const std::string& name) const;  // dom(Γ), blocks included
  const AssumEntry* find_assum(const std::string& name) const;
  const DefEntry* find_def(const std::string& name) const;
  const TermPtr* lookup_type(const std::string& name) const;  // assum or def
  const BlockPtr* find_block_with(const std::string& name) const;
  bool contains_block(const InductiveBlock& block) const;

  // Index of a name among the valuation-bearing entries (assum + def).
  std::optional<int> value_position(const std::string& name) const;
  std::set<std::string> dom() const;

 private:
  std::vector<ContextEntry> entries_;
};

// RAII helper: pops the pushed entries when the scope ends.
class ScopedEntries {
 public:
  explicit ScopedEntries(Context& ctx) : ctx_(ctx) {}
  ~ScopedEntries() {
    for (size_t i = 0; i < count_; ++i) ctx_.pop();
  }
  void push(ContextEntry e) {
    ctx_.push(std::move(e));
    ++count_;
  }
  ScopedEntries(const ScopedEntries&) = delete;
  ScopedEntries& operator=(const ScopedEntries&) = delete;

 private:
  Context& ctx_;
  size_t count_ = 0;
};

// Constructors. pi/lam/let_in close the named variable in the body.
TermPtr var(const std::string& name);
TermPtr bound(int index, const std::string& hint = "");
TermPtr sort(Sort s);
TermPtr prop();
TermPtr type_u(int level);
TermPtr pi(const std::string& name, TermPtr domain, TermPtr codomain);
TermPtr arrow(TermPtr domain, TermPtr codomain);
TermPtr lam(const std::string& name, TermPtr domain, TermPtr body);
TermPtr let_in(const std::string& name, TermPtr def, TermPtr def_type, TermPtr body);
TermPtr app(TermPtr fn, TermPtr arg);
TermPtr app(TermPtr fn, const std::vector<TermPtr>& args);
TermPtr case_of(TermPtr scrutinee, TermPtr motive, std::vector<TermPtr> branches);
TermPtr ind_ref(BlockPtr block, const std::string& name);
TermPtr fix(int index, std::vector<FixDef> defs);

// Prebuilt closed variants of pi/lam where the body does not use the binder.
TermPtr pi_raw(const std::string& hint, TermPtr domain, TermPtr codomain);
TermPtr lam_raw(const std::string& hint, TermPtr domain, TermPtr body);
TermPtr let_raw(const std::string& hint, TermPtr def, TermPtr def_type, TermPtr body);

using NameSet = std::set<std::string>;

NameSet free_vars(const TermPtr& t);

// Capture-avoiding substitution of a free variable. Inductive and fix nodes
// are left untouched when the substitution would touch their internal names.
TermPtr substitute(const TermPtr& t, const std::string& x, const TermPtr& u);

using Binding = std::pair<std::string, TermPtr>;
TermPtr simultaneous_subst(const TermPtr& t, const std::vector<Binding>& delta);
TermPtr sequential_subst(const TermPtr& t, const std::vector<Binding>& delta);

// A[.\D]: replace block-internal names with references D·z.
TermPtr replace_ind_names(const TermPtr& a, const BlockPtr& d);

// Instantiate Bound 0 of a binder body with a locally closed term.
TermPtr open_binder(const TermPtr& body, const TermPtr& arg);
// Abstract a free variable back into Bound 0.
TermPtr close_over(const TermPtr& t, const std::string& name);

bool alpha_eq(const TermPtr& a, const TermPtr& b);

std::string fresh_name(const std::string& hint, const NameSet& avoid);

// Application spine: head and argument list, outermost last.
struct SpineView {
  TermPtr head;
  std::vector<TermPtr> args;
};
SpineView spine(const TermPtr& t);

// Opened binder telescope. strip_pis / strip_lams peel up to `limit` leading
// binders (all when limit < 0), replacing each bound variable with a fresh
// free variable.
struct OpenedBinder {
  std::string name;
  TermPtr domain;
};
struct OpenedTelescope {
  std::vector<OpenedBinder> binders;
  TermPtr tail;
};
OpenedTelescope strip_pis(const TermPtr& t, NameSet avoid, int limit = -1);
OpenedTelescope strip_lams(const TermPtr& t, NameSet avoid, int limit = -1);
TermPtr rebuild_pis(const OpenedTelescope& tel);
TermPtr rebuild_pis(const std::vector<OpenedBinder>& binders, const TermPtr& tail);
TermPtr rebuild_lams(const std::vector<OpenedBinder>& binders, const TermPtr& tail);

// Number of leading products, without opening.
int count_pis(const TermPtr& t);

// Exact size measure in half-units.
struct Half {
  long long halves = 0;

  bool operator==(const Half& o) const { return halves == o.halves; }
  bool operator<(const Half& o) const { return halves < o.halves; }
  bool operator<=(const Half& o) const { return halves <= o.halves; }
  Half operator+(const Half& o) const { return Half{halves + o.halves}; }
  std::string str() const;
  static Half whole(long long n) { return Half{2 * n}; }
  static Half half() { return Half{1}; }
};

Half term_size(const TermPtr& t);
Half context_size(const Context& ctx);
Half judgment_size(const Context& ctx, const TermPtr& t);

}  // namespace cck
