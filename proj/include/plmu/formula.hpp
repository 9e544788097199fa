#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace plmu {

// Connectives of the probabilistic mu-calculus with independent product.
// Prod/Coprod are the multiplicative pair (x*y and x+y-xy), Diamond/Box the
// labeled modalities, Mu/Nu the fixpoint binders.
enum class FKind : uint8_t { Var, Or, And, Coprod, Prod, Diamond, Box, Mu, Nu };

// Immutable formula tree with value semantics; nodes are shared, so copies
// are cheap and subtrees may be aliased. Structural hash is cached at
// construction.
class Formula {
public:
    Formula() = default; // empty handle; only factory output is usable

    static Formula var(std::string name);
    static Formula disj(Formula lhs, Formula rhs);
    static Formula conj(Formula lhs, Formula rhs);
    static Formula coprod(Formula lhs, Formula rhs);
    static Formula prod(Formula lhs, Formula rhs);
    static Formula diamond(std::string label, Formula body);
    static Formula box(std::string label, Formula body);
    static Formula mu(std::string var, Formula body);
    static Formula nu(std::string var, Formula body);

    bool valid() const { return node_ != nullptr; }
    FKind kind() const;
    // Var name, binder variable, or modal label depending on kind.
    const std::string& name() const;
    const Formula& lhs() const;          // binary left
    const Formula& rhs() const;          // binary right
    const Formula& body() const;         // modal / binder child

    bool isBinary() const;
    bool isBinder() const;
    bool isModal() const;

    size_t hash() const;
    bool operator==(const Formula& other) const; // structural
    bool operator!=(const Formula& other) const { return !(*this == other); }

private:
    struct Node;
    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    static Formula make(FKind kind, std::string name, Formula lhs, Formula rhs);
    std::shared_ptr<const Node> node_;
};

struct FormulaHash {
    size_t operator()(const Formula& f) const { return f.hash(); }
};

// Names with this prefix are reserved for desugaring (tt, ff, P>0, P=1) and
// cannot be written in source text, which keeps the fresh variables of the
// threshold expansions provably absent from user formulas.
inline constexpr std::string_view kReservedPrefix = "_v";

bool isReservedName(std::string_view name);

// Parses the concrete syntax (see README / cli module). Sugar is expanded:
//   tt      -> nu _vK. _vK
//   ff      -> mu _vK. _vK
//   P>0 F   -> mu _vK. (F (+) _vK)
//   P=1 F   -> nu _vK. (F * _vK)
//   !F      -> negate(F), F must be closed
// Throws ParseError (with position) on bad input.
Formula parseFormula(const std::string& text);

// Inverse of parseFormula up to structural identity: reserved-variable sugar
// shapes are printed back as tt/ff/P>0/P=1, so the output is always
// re-parseable even though reserved names are unlexable.
std::string printFormula(const Formula& f);

// Set of subformulas (binders not unfolded), deduplicated structurally,
// in DFS pre-order of first occurrence.
std::vector<Formula> subformulas(const Formula& f);

std::set<std::string> freeVars(const Formula& f);
bool isClosed(const Formula& f);

// Alpha-renames so that every binder binds a distinct variable and no
// variable occurs both free and bound. Binder names that already satisfy
// this are kept; clashing groups are renamed wholesale to name1, name2, ...
// in pre-order.
Formula toNormalForm(const Formula& f);
bool isNormalForm(const Formula& f);

// Rewrites every self-pair G*G / G(+)G to G * (G||G) (resp. (+)), bottom-up,
// then re-establishes normal form (the rewrite duplicates binders).
// Precondition: f in normal form.
Formula toProductNormalForm(const Formula& f);
// True iff no Prod(G,G) / Coprod(G,G) node occurs (structural scan only).
bool isProductNormalForm(const Formula& f);

// Structural dualization of a closed formula: And<->Or, Prod<->Coprod,
// Diamond<->Box, Mu<->Nu, variables fixed. Satisfies
// eval(negate(f)) = 1 - eval(f). Throws ValidationError on open input.
Formula negate(const Formula& f);

// X subsumes Y iff the binder of Y occurs inside the body of the binder
// of X. Returns, for every bound variable, the set of variables it
// subsumes. Precondition: normal form (throws ValidationError otherwise).
std::map<std::string, std::set<std::string>> subsumptionOrder(const Formula& f);

} // namespace plmu
