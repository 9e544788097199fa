#include "plmu/formula.hpp"

#include "plmu/errors.hpp"

#include <cctype>
#include <functional>
#include <unordered_set>

namespace plmu {

struct Formula::Node {
    FKind kind;
    std::string name; // var / binder variable / modal label
    Formula lhs;      // binary left, or modal/binder child
    Formula rhs;      // binary right
    size_t hash;
};

namespace {

size_t combineHash(size_t seed, size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

size_t nodeHash(FKind kind, const std::string& name, const Formula& lhs, const Formula& rhs) {
    size_t h = combineHash(static_cast<size_t>(kind) + 0x51, std::hash<std::string>{}(name));
    if (lhs.valid()) h = combineHash(h, lhs.hash());
    if (rhs.valid()) h = combineHash(h, rhs.hash());
    return h;
}

} // namespace

Formula Formula::make(FKind kind, std::string name, Formula lhs, Formula rhs) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->name = std::move(name);
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    n->hash = nodeHash(n->kind, n->name, n->lhs, n->rhs);
    return Formula(std::move(n));
}

Formula Formula::var(std::string name) { return make(FKind::Var, std::move(name), {}, {}); }
Formula Formula::disj(Formula l, Formula r) { return make(FKind::Or, {}, std::move(l), std::move(r)); }
Formula Formula::conj(Formula l, Formula r) { return make(FKind::And, {}, std::move(l), std::move(r)); }
Formula Formula::coprod(Formula l, Formula r) { return make(FKind::Coprod, {}, std::move(l), std::move(r)); }
Formula Formula::prod(Formula l, Formula r) { return make(FKind::Prod, {}, std::move(l), std::move(r)); }
Formula Formula::diamond(std::string a, Formula g) { return make(FKind::Diamond, std::move(a), std::move(g), {}); }
Formula Formula::box(std::string a, Formula g) { return make(FKind::Box, std::move(a), std::move(g), {}); }
Formula Formula::mu(std::string x, Formula g) { return make(FKind::Mu, std::move(x), std::move(g), {}); }
Formula Formula::nu(std::string x, Formula g) { return make(FKind::Nu, std::move(x), std::move(g), {}); }

FKind Formula::kind() const { return node_->kind; }
const std::string& Formula::name() const { return node_->name; }
const Formula& Formula::lhs() const { return node_->lhs; }
const Formula& Formula::rhs() const { return node_->rhs; }
const Formula& Formula::body() const { return node_->lhs; }
size_t Formula::hash() const { return node_->hash; }

bool Formula::isBinary() const {
    FKind k = node_->kind;
    return k == FKind::Or || k == FKind::And || k == FKind::Coprod || k == FKind::Prod;
}
bool Formula::isBinder() const { return node_->kind == FKind::Mu || node_->kind == FKind::Nu; }
bool Formula::isModal() const { return node_->kind == FKind::Diamond || node_->kind == FKind::Box; }

bool Formula::operator==(const Formula& other) const {
    if (node_ == other.node_) return true;
    if (!node_ || !other.node_) return false;
    if (node_->hash != other.node_->hash) return false;
    if (node_->kind != other.node_->kind || node_->name != other.node_->name) return false;
    if (node_->lhs.valid() != other.node_->lhs.valid()) return false;
    if (node_->lhs.valid() && !(node_->lhs == other.node_->lhs)) return false;
    if (node_->rhs.valid() != other.node_->rhs.valid()) return false;
    if (node_->rhs.valid() && !(node_->rhs == other.node_->rhs)) return false;
    return true;
}

bool isReservedName(std::string_view name) {
    return name.substr(0, kReservedPrefix.size()) == kReservedPrefix;
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

namespace {

enum class Tok : uint8_t {
    Ident, Mu, Nu, Tt, Ff, Not, AndOp, OrOp, Star, CoprodOp,
    Diamond, Box, Pgt0, Peq1, LParen, RParen, Dot, End,
};

struct Token {
    Tok kind;
    std::string text; // ident name or modal label
    int line;
    int col;
};

struct Lexer {
    const std::string& src;
    size_t pos = 0;
    int line = 1;
    int col = 1;

    explicit Lexer(const std::string& s) : src(s) {}

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line, col); }

    char peek() const { return pos < src.size() ? src[pos] : '\0'; }
    char peekAt(size_t k) const { return pos + k < src.size() ? src[pos + k] : '\0'; }

    void advance() {
        if (src[pos] == '\n') { ++line; col = 1; } else { ++col; }
        ++pos;
    }

    void skipSpace() {
        while (pos < src.size()) {
            char c = src[pos];
            if (c == '#') {
                while (pos < src.size() && src[pos] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    static bool identStart(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
    static bool identCont(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    }

    std::string readIdent() {
        if (!identStart(peek())) fail("expected identifier");
        std::string s;
        while (identCont(peek())) { s += peek(); advance(); }
        return s;
    }

    Token next() {
        skipSpace();
        Token t{Tok::End, "", line, col};
        if (pos >= src.size()) return t;
        char c = peek();
        if (c == '(') {
            if (peekAt(1) == '+' && peekAt(2) == ')') {
                advance(); advance(); advance();
                t.kind = Tok::CoprodOp;
                return t;
            }
            advance();
            t.kind = Tok::LParen;
            return t;
        }
        switch (c) {
            case ')': advance(); t.kind = Tok::RParen; return t;
            case '.': advance(); t.kind = Tok::Dot; return t;
            case '*': advance(); t.kind = Tok::Star; return t;
            case '!': advance(); t.kind = Tok::Not; return t;
            case '&':
                if (peekAt(1) != '&') fail("expected '&&'");
                advance(); advance();
                t.kind = Tok::AndOp;
                return t;
            case '|':
                if (peekAt(1) != '|') fail("expected '||'");
                advance(); advance();
                t.kind = Tok::OrOp;
                return t;
            case '<': {
                advance();
                skipSpace();
                std::string a = readIdent();
                skipSpace();
                if (peek() != '>') fail("expected '>' closing modality");
                advance();
                t.kind = Tok::Diamond;
                t.text = std::move(a);
                return t;
            }
            case '[': {
                advance();
                skipSpace();
                std::string a = readIdent();
                skipSpace();
                if (peek() != ']') fail("expected ']' closing modality");
                advance();
                t.kind = Tok::Box;
                t.text = std::move(a);
                return t;
            }
            default: break;
        }
        if (!identStart(c)) fail(std::string("unexpected character '") + c + "'");
        std::string id = readIdent();
        // Threshold operators: the identifier P immediately followed by >0 / =1.
        if (id == "P" && peek() == '>' && peekAt(1) == '0') {
            advance(); advance();
            t.kind = Tok::Pgt0;
            return t;
        }
        if (id == "P" && peek() == '=' && peekAt(1) == '1') {
            advance(); advance();
            t.kind = Tok::Peq1;
            return t;
        }
        if (id == "mu") { t.kind = Tok::Mu; return t; }
        if (id == "nu") { t.kind = Tok::Nu; return t; }
        if (id == "tt") { t.kind = Tok::Tt; return t; }
        if (id == "ff") { t.kind = Tok::Ff; return t; }
        t.kind = Tok::Ident;
        t.text = std::move(id);
        return t;
    }
};

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------
//
// formula := or
// or      := and ('||' and)*
// and     := coprod ('&&' coprod)*
// coprod  := prod ('(+)' prod)*
// prod    := prefix ('*' prefix)*
// prefix  := '!' prefix | <a> prefix | [a] prefix | 'P>0' prefix | 'P=1' prefix
//          | 'mu' X '.' formula | 'nu' X '.' formula | atom
// atom    := 'tt' | 'ff' | ident | '(' formula ')'
//
// Binders take the longest possible body (their body is a full formula).

struct Parser {
    std::vector<Token> toks;
    size_t at = 0;
    int freshCounter = 0;

    explicit Parser(const std::string& text) {
        Lexer lx(text);
        for (;;) {
            Token t = lx.next();
            toks.push_back(t);
            if (t.kind == Tok::End) break;
        }
    }

    const Token& cur() const { return toks[at]; }
    Token take() { return toks[at++]; }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, cur().line, cur().col);
    }

    std::string fresh() { return std::string(kReservedPrefix) + std::to_string(freshCounter++); }

    Formula parseFormulaTop() {
        Formula f = parseOr();
        if (cur().kind != Tok::End) fail("trailing input after formula");
        return f;
    }

    Formula parseOr() {
        Formula f = parseAnd();
        while (cur().kind == Tok::OrOp) { take(); f = Formula::disj(f, parseAnd()); }
        return f;
    }

    Formula parseAnd() {
        Formula f = parseCoprod();
        while (cur().kind == Tok::AndOp) { take(); f = Formula::conj(f, parseCoprod()); }
        return f;
    }

    Formula parseCoprod() {
        Formula f = parseProd();
        while (cur().kind == Tok::CoprodOp) { take(); f = Formula::coprod(f, parseProd()); }
        return f;
    }

    Formula parseProd() {
        Formula f = parsePrefix();
        while (cur().kind == Tok::Star) { take(); f = Formula::prod(f, parsePrefix()); }
        return f;
    }

    Formula parsePrefix() {
        switch (cur().kind) {
            case Tok::Not: {
                Token t = take();
                Formula g = parsePrefix();
                if (!isClosed(g))
                    throw ParseError("'!' requires a closed operand", t.line, t.col);
                return negate(g);
            }
            case Tok::Diamond: {
                Token t = take();
                return Formula::diamond(t.text, parsePrefix());
            }
            case Tok::Box: {
                Token t = take();
                return Formula::box(t.text, parsePrefix());
            }
            case Tok::Pgt0: {
                take();
                Formula g = parsePrefix();
                std::string x = fresh();
                return Formula::mu(x, Formula::coprod(g, Formula::var(x)));
            }
            case Tok::Peq1: {
                take();
                Formula g = parsePrefix();
                std::string x = fresh();
                return Formula::nu(x, Formula::prod(g, Formula::var(x)));
            }
            case Tok::Mu:
            case Tok::Nu: {
                bool isMu = cur().kind == Tok::Mu;
                take();
                if (cur().kind != Tok::Ident) fail("expected variable after binder");
                std::string x = take().text;
                if (cur().kind != Tok::Dot) fail("expected '.' after binder variable");
                take();
                Formula b = parseOr();
                return isMu ? Formula::mu(x, b) : Formula::nu(x, b);
            }
            default:
                return parseAtom();
        }
    }

    Formula parseAtom() {
        switch (cur().kind) {
            case Tok::Tt: {
                take();
                std::string x = fresh();
                return Formula::nu(x, Formula::var(x));
            }
            case Tok::Ff: {
                take();
                std::string x = fresh();
                return Formula::mu(x, Formula::var(x));
            }
            case Tok::Ident:
                return Formula::var(take().text);
            case Tok::LParen: {
                take();
                Formula f = parseOr();
                if (cur().kind != Tok::RParen) fail("expected ')'");
                take();
                return f;
            }
            default:
                fail("expected formula");
        }
    }
};

} // namespace

Formula parseFormula(const std::string& text) {
    Parser p(text);
    return p.parseFormulaTop();
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {

// Precedence levels for printing; parenthesize a child whose level is below
// the context. Binders are weakest (they swallow everything to their right).
constexpr int kPrecBinder = 0;
constexpr int kPrecOr = 1;
constexpr int kPrecAnd = 2;
constexpr int kPrecCoprod = 3;
constexpr int kPrecProd = 4;
constexpr int kPrecPrefix = 5;
constexpr int kPrecAtom = 6;

// Recognizes the desugared threshold/constant shapes over reserved
// variables, so printing emits tokens the parser accepts again.
enum class Sugar { None, Tt, Ff, Pgt0, Peq1 };

Sugar sugarShape(const Formula& f) {
    if (!f.isBinder() || !isReservedName(f.name())) return Sugar::None;
    const Formula& b = f.body();
    if (b.kind() == FKind::Var && b.name() == f.name())
        return f.kind() == FKind::Nu ? Sugar::Tt : Sugar::Ff;
    if (f.kind() == FKind::Mu && b.kind() == FKind::Coprod) {
        if (b.rhs().kind() == FKind::Var && b.rhs().name() == f.name() &&
            !freeVars(b.lhs()).count(f.name()))
            return Sugar::Pgt0;
    }
    if (f.kind() == FKind::Nu && b.kind() == FKind::Prod) {
        if (b.rhs().kind() == FKind::Var && b.rhs().name() == f.name() &&
            !freeVars(b.lhs()).count(f.name()))
            return Sugar::Peq1;
    }
    return Sugar::None;
}

void printRec(const Formula& f, int ctx, std::string& out) {
    Sugar s = sugarShape(f);
    int prec;
    switch (s) {
        case Sugar::Tt:
        case Sugar::Ff: prec = kPrecAtom; break;
        case Sugar::Pgt0:
        case Sugar::Peq1: prec = kPrecPrefix; break;
        case Sugar::None:
            switch (f.kind()) {
                case FKind::Var: prec = kPrecAtom; break;
                case FKind::Or: prec = kPrecOr; break;
                case FKind::And: prec = kPrecAnd; break;
                case FKind::Coprod: prec = kPrecCoprod; break;
                case FKind::Prod: prec = kPrecProd; break;
                case FKind::Diamond:
                case FKind::Box: prec = kPrecPrefix; break;
                default: prec = kPrecBinder; break;
            }
            break;
    }
    bool parens = prec < ctx;
    if (parens) out += '(';
    switch (s) {
        case Sugar::Tt: out += "tt"; break;
        case Sugar::Ff: out += "ff"; break;
        case Sugar::Pgt0:
            out += "P>0 ";
            printRec(f.body().lhs(), kPrecPrefix, out);
            break;
        case Sugar::Peq1:
            out += "P=1 ";
            printRec(f.body().lhs(), kPrecPrefix, out);
            break;
        case Sugar::None:
            switch (f.kind()) {
                case FKind::Var: out += f.name(); break;
                case FKind::Or:
                case FKind::And:
                case FKind::Coprod:
                case FKind::Prod: {
                    const char* op = f.kind() == FKind::Or ? " || "
                                   : f.kind() == FKind::And ? " && "
                                   : f.kind() == FKind::Coprod ? " (+) " : " * ";
                    printRec(f.lhs(), prec, out);
                    out += op;
                    printRec(f.rhs(), prec + 1, out);
                    break;
                }
                case FKind::Diamond:
                case FKind::Box:
                    out += f.kind() == FKind::Diamond ? '<' : '[';
                    out += f.name();
                    out += f.kind() == FKind::Diamond ? '>' : ']';
                    printRec(f.body(), kPrecPrefix, out);
                    break;
                case FKind::Mu:
                case FKind::Nu:
                    out += f.kind() == FKind::Mu ? "mu " : "nu ";
                    out += f.name();
                    out += ". ";
                    printRec(f.body(), kPrecBinder, out);
                    break;
            }
            break;
    }
    if (parens) out += ')';
}

} // namespace

std::string printFormula(const Formula& f) {
    std::string out;
    printRec(f, kPrecBinder, out);
    return out;
}

// ---------------------------------------------------------------------------
// Analysis
// ---------------------------------------------------------------------------

namespace {

void subRec(const Formula& f, std::unordered_set<Formula, FormulaHash>& seen,
            std::vector<Formula>& out) {
    if (seen.count(f)) return;
    seen.insert(f);
    out.push_back(f);
    switch (f.kind()) {
        case FKind::Var: break;
        case FKind::Or:
        case FKind::And:
        case FKind::Coprod:
        case FKind::Prod:
            subRec(f.lhs(), seen, out);
            subRec(f.rhs(), seen, out);
            break;
        default:
            subRec(f.body(), seen, out);
            break;
    }
}

void freeVarsRec(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
    switch (f.kind()) {
        case FKind::Var:
            if (!bound.count(f.name())) out.insert(f.name());
            break;
        case FKind::Or:
        case FKind::And:
        case FKind::Coprod:
        case FKind::Prod:
            freeVarsRec(f.lhs(), bound, out);
            freeVarsRec(f.rhs(), bound, out);
            break;
        case FKind::Diamond:
        case FKind::Box:
            freeVarsRec(f.body(), bound, out);
            break;
        case FKind::Mu:
        case FKind::Nu: {
            bool fresh = bound.insert(f.name()).second;
            freeVarsRec(f.body(), bound, out);
            if (fresh) bound.erase(f.name());
            break;
        }
    }
}

void binderNames(const Formula& f, std::vector<std::string>& out) {
    switch (f.kind()) {
        case FKind::Var: break;
        case FKind::Or:
        case FKind::And:
        case FKind::Coprod:
        case FKind::Prod:
            binderNames(f.lhs(), out);
            binderNames(f.rhs(), out);
            break;
        case FKind::Diamond:
        case FKind::Box:
            binderNames(f.body(), out);
            break;
        case FKind::Mu:
        case FKind::Nu:
            out.push_back(f.name());
            binderNames(f.body(), out);
            break;
    }
}

} // namespace

std::vector<Formula> subformulas(const Formula& f) {
    std::unordered_set<Formula, FormulaHash> seen;
    std::vector<Formula> out;
    subRec(f, seen, out);
    return out;
}

std::set<std::string> freeVars(const Formula& f) {
    std::set<std::string> bound, out;
    freeVarsRec(f, bound, out);
    return out;
}

bool isClosed(const Formula& f) { return freeVars(f).empty(); }

bool isNormalForm(const Formula& f) {
    std::vector<std::string> binders;
    binderNames(f, binders);
    std::set<std::string> distinct(binders.begin(), binders.end());
    if (distinct.size() != binders.size()) return false;
    for (const std::string& x : freeVars(f))
        if (distinct.count(x)) return false;
    return true;
}

namespace {

struct Renamer {
    const std::set<std::string>& conflicted;
    std::set<std::string> used;
    std::map<std::string, int> counters;
    std::vector<std::pair<std::string, std::string>> scope; // binder -> new name

    std::string lookup(const std::string& x) const {
        for (auto it = scope.rbegin(); it != scope.rend(); ++it)
            if (it->first == x) return it->second;
        return x;
    }

    std::string freshFor(const std::string& base) {
        int& k = counters[base];
        for (;;) {
            ++k;
            std::string cand = base + std::to_string(k);
            if (used.insert(cand).second) return cand;
        }
    }

    Formula run(const Formula& f) {
        switch (f.kind()) {
            case FKind::Var:
                return Formula::var(lookup(f.name()));
            case FKind::Or: return Formula::disj(run(f.lhs()), run(f.rhs()));
            case FKind::And: return Formula::conj(run(f.lhs()), run(f.rhs()));
            case FKind::Coprod: return Formula::coprod(run(f.lhs()), run(f.rhs()));
            case FKind::Prod: return Formula::prod(run(f.lhs()), run(f.rhs()));
            case FKind::Diamond: return Formula::diamond(f.name(), run(f.body()));
            case FKind::Box: return Formula::box(f.name(), run(f.body()));
            case FKind::Mu:
            case FKind::Nu: {
                std::string nx = conflicted.count(f.name()) ? freshFor(f.name()) : f.name();
                scope.emplace_back(f.name(), nx);
                Formula b = run(f.body());
                scope.pop_back();
                return f.kind() == FKind::Mu ? Formula::mu(nx, std::move(b))
                                             : Formula::nu(nx, std::move(b));
            }
        }
        return f; // unreachable
    }
};

} // namespace

Formula toNormalForm(const Formula& f) {
    std::vector<std::string> binders;
    binderNames(f, binders);
    std::map<std::string, int> count;
    for (const std::string& b : binders) ++count[b];
    std::set<std::string> free = freeVars(f);
    std::set<std::string> conflicted;
    for (const auto& [name, n] : count)
        if (n >= 2 || free.count(name)) conflicted.insert(name);
    if (conflicted.empty()) return f;
    Renamer rn{conflicted, {}, {}, {}};
    rn.used.insert(binders.begin(), binders.end());
    rn.used.insert(free.begin(), free.end());
    return rn.run(f);
}

namespace {

Formula pnfRec(const Formula& f) {
    switch (f.kind()) {
        case FKind::Var: return f;
        case FKind::Or: return Formula::disj(pnfRec(f.lhs()), pnfRec(f.rhs()));
        case FKind::And: return Formula::conj(pnfRec(f.lhs()), pnfRec(f.rhs()));
        case FKind::Coprod:
        case FKind::Prod: {
            Formula l = pnfRec(f.lhs());
            Formula r = pnfRec(f.rhs());
            if (l == r) r = Formula::disj(l, l); // G*G -> G*(G||G), likewise (+)
            return f.kind() == FKind::Prod ? Formula::prod(std::move(l), std::move(r))
                                           : Formula::coprod(std::move(l), std::move(r));
        }
        case FKind::Diamond: return Formula::diamond(f.name(), pnfRec(f.body()));
        case FKind::Box: return Formula::box(f.name(), pnfRec(f.body()));
        case FKind::Mu: return Formula::mu(f.name(), pnfRec(f.body()));
        case FKind::Nu: return Formula::nu(f.name(), pnfRec(f.body()));
    }
    return f; // unreachable
}

} // namespace

Formula toProductNormalForm(const Formula& f) {
    // The rewrite duplicates subtrees, so binder names may repeat afterwards;
    // a final renaming pass restores normal form. Renaming never creates a
    // new self-pair: subtrees containing binders become distinct, subtrees
    // without binders are untouched.
    return toNormalForm(pnfRec(f));
}

bool isProductNormalForm(const Formula& f) {
    switch (f.kind()) {
        case FKind::Var: return true;
        case FKind::Coprod:
        case FKind::Prod:
            if (f.lhs() == f.rhs()) return false;
            [[fallthrough]];
        case FKind::Or:
        case FKind::And:
            return isProductNormalForm(f.lhs()) && isProductNormalForm(f.rhs());
        default:
            return isProductNormalForm(f.body());
    }
}

namespace {

Formula negateRec(const Formula& f) {
    switch (f.kind()) {
        case FKind::Var: return f;
        case FKind::Or: return Formula::conj(negateRec(f.lhs()), negateRec(f.rhs()));
        case FKind::And: return Formula::disj(negateRec(f.lhs()), negateRec(f.rhs()));
        case FKind::Coprod: return Formula::prod(negateRec(f.lhs()), negateRec(f.rhs()));
        case FKind::Prod: return Formula::coprod(negateRec(f.lhs()), negateRec(f.rhs()));
        case FKind::Diamond: return Formula::box(f.name(), negateRec(f.body()));
        case FKind::Box: return Formula::diamond(f.name(), negateRec(f.body()));
        case FKind::Mu: return Formula::nu(f.name(), negateRec(f.body()));
        case FKind::Nu: return Formula::mu(f.name(), negateRec(f.body()));
    }
    return f; // unreachable
}

} // namespace

Formula negate(const Formula& f) {
    if (!isClosed(f))
        throw ValidationError("negate: formula has free variables");
    return negateRec(f);
}

namespace {

void subsumptionRec(const Formula& f, std::map<std::string, std::set<std::string>>& out) {
    switch (f.kind()) {
        case FKind::Var: return;
        case FKind::Or:
        case FKind::And:
        case FKind::Coprod:
        case FKind::Prod:
            subsumptionRec(f.lhs(), out);
            subsumptionRec(f.rhs(), out);
            return;
        case FKind::Diamond:
        case FKind::Box:
            subsumptionRec(f.body(), out);
            return;
        case FKind::Mu:
        case FKind::Nu: {
            std::vector<std::string> inner;
            binderNames(f.body(), inner);
            out[f.name()] = std::set<std::string>(inner.begin(), inner.end());
            subsumptionRec(f.body(), out);
            return;
        }
    }
}

} // namespace

std::map<std::string, std::set<std::string>> subsumptionOrder(const Formula& f) {
    if (!isNormalForm(f))
        throw ValidationError("subsumptionOrder: formula not in normal form");
    std::map<std::string, std::set<std::string>> out;
    subsumptionRec(f, out);
    return out;
}

} // namespace plmu
