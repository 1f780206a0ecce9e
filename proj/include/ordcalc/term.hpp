#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace ordcalc {

class Ctx;

// ---------------------------------------------------------------------------
// Term kinds.
//
// Sum        : a_m + ... + a_0, >= 2 parts, each additively principal,
//              nonincreasing left to right.
// Veblen     : binary phi(a, b).
// Psi        : psi_kappa^f(a); f may be empty.
// Dagger     : base^{+ivec}, ivec nonempty nonincreasing, entries in [1, N].
//              Iterated daggers are flattened into one node.
// INBracket  : In[rho], the collapsed image of In.
// SubDagger  : S^{+ivec}[rho/S], the collapsed image of S^{+ivec}.
// ---------------------------------------------------------------------------
enum class Kind : uint8_t {
  Zero,
  Omega,
  IN,
  Sum,
  Veblen,
  Psi,
  Dagger,
  INBracket,
  SubDagger,
};

struct TermNode;
using Term = const TermNode*;

struct NFNode;
using NF = const NFNode*;  // theta-normal-form ordinal, see theta.hpp

struct FFNode;
using FF = const FFNode*;  // finite function, see finfun.hpp

// One triple theta_b(xi) * a of a normal form.  b is an omega power (as a
// Term), xi the iterated argument, a the coefficient (a Term, 0 < a < base).
struct NFTriple {
  Term b;
  NF xi;
  Term a;
  bool operator==(const NFTriple& o) const {
    return b == o.b && xi == o.xi && a == o.a;
  }
};

struct NFNode {
  std::vector<NFTriple> terms;  // strictly decreasing in theta-value
  size_t hash = 0;
};

struct FFEntry {
  Term key;
  NF value;
  bool operator==(const FFEntry& o) const {
    return key == o.key && value == o.value;
  }
};

struct FFNode {
  std::vector<FFEntry> entries;  // keys strictly increasing under term order
  size_t hash = 0;
};

struct TermNode {
  Kind kind;
  std::vector<Term> args;    // Sum parts, Veblen args, Psi {kappa, a},
                             // Dagger {base}, INBracket {rho}, SubDagger {S, rho}
  std::vector<int> ivec;     // Dagger / SubDagger vector
  FF f = nullptr;            // Psi superscript
  size_t hash = 0;
  uint32_t length = 0;       // number of constructor symbols

  bool is(Kind k) const { return kind == k; }
};

enum class Ordering : int8_t { Less = -1, Equal = 0, Greater = 1 };

inline Ordering flip(Ordering o) {
  return static_cast<Ordering>(-static_cast<int>(o));
}

// Stable-classification tag, Def of OT classes.
struct StableClass {
  enum Tag : uint8_t { Plain, PsiTerm, SStK, LStK, INTerm, OmegaTerm, RegOther } tag;
  int k = 0;          // for SStK / LStK
  bool real = true;   // false for members of SSt^M \ SSt (resp. LSt^M \ LSt)
  bool operator==(const StableClass& o) const {
    return tag == o.tag && k == o.k && real == o.real;
  }
};

class domain_error : public std::runtime_error {
 public:
  explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// Ctx owns the intern tables and memo caches.  Terms are hash-consed: equal
// ASTs are the same pointer, so equality is pointer equality.  All values are
// immutable once interned.
// ---------------------------------------------------------------------------
class Ctx {
 public:
  explicit Ctx(int N, int depth_budget = 100000);
  ~Ctx();

  int N() const { return n_; }
  int depth_budget() const { return depth_budget_; }

  // --- leaf constructors -------------------------------------------------
  Term zero();
  Term omega();
  Term in();
  Term one();         // phi(0, 0)
  Term omega_term();  // phi(0, 1), the ordinal omega

  // --- smart constructors (cheap local shape checks only) -----------------
  // Builds the normal-form sum of an already-flattened part list; parts must
  // be additively principal.  Ordering of parts is not checked here.
  Term sum(std::vector<Term> parts);
  Term veblen(Term a, Term b);
  Term psi(Term kappa, FF f, Term a);
  Term psi(Term kappa, Term a);  // empty superscript
  // Flattens Dagger-over-Dagger by concatenating vectors.
  Term dagger(Term base, std::vector<int> ivec);
  Term in_bracket(Term rho);
  Term sub_dagger(Term S, std::vector<int> ivec, Term rho);

  NF nf(std::vector<NFTriple> triples);
  NF nf_zero();
  FF ff(std::vector<FFEntry> entries);  // keys must be strictly increasing
  FF ff_empty();

  // --- structural utilities ----------------------------------------------
  static uint32_t length(Term t) { return t->length; }
  std::vector<Term> k_imm(Term t);                // immediate subterms k(t)
  std::vector<Term> sc(Term t);                   // SC_{I_N}(t)
  std::vector<Term> sc_nf(NF xi);                 // SC of an NF value
  std::vector<Term> sc_ff(FF f);                  // SC_{I_N}(f)
  std::vector<Term> imm_sub(Term t);              // S(t)
  StableClass classify(Term t);

  bool is_strongly_critical(Term t) const {
    switch (t->kind) {
      case Kind::Omega:
      case Kind::IN:
      case Kind::Psi:
      case Kind::Dagger:
      case Kind::INBracket:
      case Kind::SubDagger:
        return true;
      default:
        return false;
    }
  }
  bool is_additive_principal(Term t) const {
    return t->kind == Kind::Veblen || is_strongly_critical(t);
  }

  // Additive decomposition: list of principal parts (nonincreasing), or
  // {t} if t is principal, {} if t == 0.
  std::vector<Term> parts_of(Term t) const;

  // --- psi subscript chains and the reachability relation -----------------
  // chain(x) for x in Psi: subscripts walking upward, ending at the first
  // non-Psi term (the regular anchor).
  std::vector<Term> chain(Term x);
  Term reg_anchor(Term x);  // last element of chain(x); x itself if not Psi

  bool prec(Term rho, Term sigma);      // rho < sigma via subscript chain
  bool prec_eq(Term rho, Term sigma) { return rho == sigma || prec(rho, sigma); }
  bool prec_r(Term pi, Term kappa);     // pi <^R kappa
  bool prec_r_eq(Term pi, Term kappa) { return pi == kappa || prec_r(pi, kappa); }
  // All terms reachable from x by <^R steps (finite; excludes x).
  std::vector<Term> reach_r(Term x);

  // The unique real root S in SSt with x <^R S, Omega, or IN; x itself when
  // x is a real successor-stable / Omega / IN.
  Term root(Term x);

  bool in_psi_class(Term t) const { return t->kind == Kind::Psi; }
  // t in SSt (real) resp. SSt^M.
  bool is_sst(Term t);
  bool is_sst_m(Term t);
  // t in LSt (real) resp. LSt^M; index via classify().
  bool is_lst(Term t);
  bool is_lst_m(Term t);
  // Class index of a stable term (SSt^M: last ivec entry; LSt^M: i with
  // anchor in SSt^M_{i+1}, N for psi_I-shaped).
  int stable_index(Term t);
  // Largest dagger entry allowed on base t (0 if t is not daggerable).
  int dagger_bound(Term t);

  bool layer_member(Term alpha, Term S) { return prec_r(alpha, S); }

  // N(rho) members with ivec length <= bound.
  std::vector<Term> next_set(Term rho, int bound);

  // --- order module (order.cpp) -------------------------------------------
  Ordering compare(Term a, Term b);
  bool less(Term a, Term b) { return compare(a, b) == Ordering::Less; }
  bool leq(Term a, Term b) { return compare(a, b) != Ordering::Greater; }
  Term max_term(Term a, Term b) { return less(a, b) ? b : a; }

  // K_X(alpha) with X = {beta : beta < delta}.
  std::vector<Term> k_set(Term alpha, Term delta);
  // K_X(alpha) with X an explicit finite set.
  std::vector<Term> k_set_over(Term alpha, const std::vector<Term>& X);
  // alpha in H_gamma(X), X = initial segment below delta: max K < gamma.
  bool in_h(Term gamma, Term delta, Term alpha);
  bool in_h_set(Term gamma, const std::vector<Term>& X, Term alpha);
  Term p0(Term alpha);
  bool in_m(Term alpha, Term rho);

  // --- collapse module (collapse.cpp) --------------------------------------
  // True when the 2M clauses define alpha[rho/S].
  bool collapsible(Term alpha, Term rho, Term S);
  Term mostowski(Term alpha, Term rho, Term S);
  NF mostowski_nf(NF xi, Term rho, Term S);
  FF mostowski_ff(FF f, Term rho, Term S);
  std::optional<Term> uncollapse(Term alpha, Term rho, Term S);
  std::optional<NF> uncollapse_nf(NF xi, Term rho, Term S);
  // The collapse anchor (rho, S) of an M-flavored term, if any: the outermost
  // window the term lives in.
  std::optional<std::pair<Term, Term>> anchor_window(Term x);

  // --- validate module (validate.cpp) --------------------------------------
  struct Verdict {
    bool ok;
    std::string clause;  // first violated clause when !ok
  };
  Verdict validate(Term t);
  bool valid(Term t) { return validate(t).ok; }
  // Every valid term of length <= max_len (< below if given), ascending
  // length, deterministic order.
  std::vector<Term> enumerate_valid(uint32_t max_len,
                                    std::optional<Term> below = std::nullopt);

  // --- internals -----------------------------------------------------------
  struct Caches;
  Caches& caches() { return *caches_; }
  void guard(int depth, const char* where) const {
    if (depth > depth_budget_)
      throw domain_error(std::string("recursion budget exceeded in ") + where);
  }

 private:
  Term intern(TermNode&& node);

  int n_;
  int depth_budget_;
  std::unique_ptr<Caches> caches_;

  Term zero_ = nullptr;
  Term omega_ = nullptr;
  Term in_ = nullptr;
  Term one_ = nullptr;
  Term omega_term_ = nullptr;
};

// Convenience for sets of interned terms.
struct TermHash {
  size_t operator()(Term t) const { return std::hash<const void*>()(t); }
};
using TermSet = std::unordered_set<Term, TermHash>;

}  // namespace ordcalc
