#include "lprpg/pddl.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace lprpg {

ParseError::ParseError(int line, int column, const std::string &expected, const std::string &found)
    : PddlError("parse error at " + std::to_string(line) + ":" + std::to_string(column) + ": expected " +
                expected + ", found " + found),
      line_(line), column_(column), expected_(expected) {}

UnsupportedConstruct::UnsupportedConstruct(const std::string &construct)
    : PddlError("unsupported construct: " + construct), construct_(construct) {}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot read file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

namespace pddl {

const Signature *DomainAST::find_predicate(const std::string &n) const {
    for (const auto &p : predicates)
        if (p.name == n)
            return &p;
    return nullptr;
}

const Signature *DomainAST::find_function(const std::string &n) const {
    for (const auto &f : functions)
        if (f.name == n)
            return &f;
    return nullptr;
}

bool DomainAST::is_subtype(const std::string &type, const std::string &ancestor) const {
    std::string t = type;
    for (std::size_t guard = 0; guard <= types.size() + 1; ++guard) {
        if (t == ancestor || ancestor == "object")
            return true;
        auto it = std::find_if(types.begin(), types.end(), [&](const TypedName &tn) { return tn.name == t; });
        if (it == types.end() || it->type == t)
            return false;
        t = it->type;
    }
    return false;
}

namespace {

struct SExpr {
    bool is_list = false;
    std::string atom;  // lower-cased
    std::vector<SExpr> items;
    int line = 0;
    int column = 0;

    bool is_atom(const char *s) const { return !is_list && atom == s; }
    std::string describe() const {
        if (!is_list)
            return "'" + atom + "'";
        if (items.empty())
            return "'()'";
        return items[0].is_list ? "'(('" : "'(" + items[0].atom + "'";
    }
};

class Reader {
public:
    explicit Reader(std::string_view text) : text_(text) {}

    SExpr read_document() {
        skip_space();
        if (pos_ >= text_.size())
            throw ParseError(line_, col_, "'('", "end of input");
        SExpr e = read();
        skip_space();
        if (pos_ < text_.size())
            throw ParseError(line_, col_, "end of input", "'" + std::string(1, text_[pos_]) + "'");
        return e;
    }

private:
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_space() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == ';') {
                while (pos_ < text_.size() && text_[pos_] != '\n')
                    advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    SExpr read() {
        skip_space();
        SExpr e;
        e.line = line_;
        e.column = col_;
        if (pos_ >= text_.size())
            throw ParseError(line_, col_, "')'", "end of input");
        char c = text_[pos_];
        if (c == ')')
            throw ParseError(line_, col_, "'(' or a symbol", "')'");
        if (c == '(') {
            e.is_list = true;
            advance();
            for (;;) {
                skip_space();
                if (pos_ >= text_.size())
                    throw ParseError(line_, col_, "')'", "end of input");
                if (text_[pos_] == ')') {
                    advance();
                    break;
                }
                e.items.push_back(read());
            }
            return e;
        }
        while (pos_ < text_.size()) {
            char d = text_[pos_];
            if (std::isspace(static_cast<unsigned char>(d)) || d == '(' || d == ')' || d == ';')
                break;
            e.atom.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(d))));
            advance();
        }
        return e;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

[[noreturn]] void fail(const SExpr &at, const std::string &expected) {
    throw ParseError(at.line, at.column, expected, at.describe());
}

const std::string &expect_symbol(const SExpr &e, const std::string &what) {
    if (e.is_list || e.atom.empty())
        fail(e, what);
    return e.atom;
}

const SExpr &expect_list(const SExpr &e, const std::string &what) {
    if (!e.is_list)
        fail(e, what);
    return e;
}

bool is_number(const std::string &s) {
    if (s.empty())
        return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size())
        return false;
    bool digit = false, dot = false;
    for (; i < s.size(); ++i) {
        if (std::isdigit(static_cast<unsigned char>(s[i])))
            digit = true;
        else if (s[i] == '.' && !dot)
            dot = true;
        else
            return false;
    }
    return digit;
}

// "a b - t c" style lists. Parameters keep their leading '?'.
std::vector<TypedName> parse_typed_list(const std::vector<SExpr> &items, std::size_t from, bool variables) {
    std::vector<TypedName> out;
    std::vector<std::string> pending;
    for (std::size_t i = from; i < items.size(); ++i) {
        const SExpr &it = items[i];
        if (it.is_list) {
            if (!it.items.empty() && it.items[0].is_atom("either"))
                throw UnsupportedConstruct("either-types");
            fail(it, variables ? "a parameter" : "a name");
        }
        if (it.atom == "-") {
            if (i + 1 >= items.size())
                fail(it, "a type name after '-'");
            const SExpr &type = items[++i];
            if (type.is_list) {
                if (!type.items.empty() && type.items[0].is_atom("either"))
                    throw UnsupportedConstruct("either-types");
                fail(type, "a type name");
            }
            if (pending.empty())
                fail(it, variables ? "a parameter before '-'" : "a name before '-'");
            for (auto &n : pending)
                out.push_back({n, type.atom});
            pending.clear();
            continue;
        }
        if (variables && it.atom[0] != '?')
            fail(it, "a parameter beginning with '?'");
        if (!variables && it.atom[0] == '?')
            fail(it, "a name");
        pending.push_back(it.atom);
    }
    for (auto &n : pending)
        out.push_back({n, "object"});
    return out;
}

const std::set<std::string> &rejected_requirements() {
    static const std::set<std::string> r = {
        ":durative-actions",  ":duration-inequalities",     ":continuous-effects",
        ":conditional-effects", ":derived-predicates",      ":timed-initial-literals",
        ":adl",               ":quantified-preconditions",  ":universal-preconditions",
        ":existential-preconditions", ":disjunctive-preconditions", ":negative-preconditions",
        ":preferences",       ":constraints",               ":object-fluents"};
    return r;
}

const std::set<std::string> &accepted_requirements() {
    static const std::set<std::string> r = {":strips", ":typing", ":numeric-fluents", ":fluents",
                                            ":action-costs", ":equality"};
    return r;
}

Atom parse_atom(const SExpr &e) {
    expect_list(e, "an atom");
    if (e.items.empty())
        fail(e, "a predicate name");
    Atom a;
    a.predicate = expect_symbol(e.items[0], "a predicate name");
    for (std::size_t i = 1; i < e.items.size(); ++i)
        a.args.push_back(expect_symbol(e.items[i], "an argument"));
    return a;
}

NumExpr parse_num_expr(const SExpr &e) {
    NumExpr n;
    if (!e.is_list) {
        if (is_number(e.atom)) {
            n.kind = NumExpr::Kind::Number;
            n.value = parse_rational(e.atom);
            return n;
        }
        if (e.atom == "#t")
            throw UnsupportedConstruct("#t (continuous time)");
        if (e.atom == "?duration")
            throw UnsupportedConstruct("?duration");
        fail(e, "a number or a function term");
    }
    if (e.items.empty())
        fail(e, "a numeric expression");
    const std::string &head = expect_symbol(e.items[0], "an operator or function name");
    auto arity_error = [&](const char *what) { fail(e, what); };
    if (head == "+" || head == "*") {
        if (e.items.size() < 3)
            arity_error("at least two operands");
        n.kind = head == "+" ? NumExpr::Kind::Add : NumExpr::Kind::Mul;
        for (std::size_t i = 1; i < e.items.size(); ++i)
            n.children.push_back(parse_num_expr(e.items[i]));
        return n;
    }
    if (head == "-") {
        if (e.items.size() == 2) {
            n.kind = NumExpr::Kind::Neg;
            n.children.push_back(parse_num_expr(e.items[1]));
            return n;
        }
        if (e.items.size() != 3)
            arity_error("one or two operands");
        n.kind = NumExpr::Kind::Sub;
        n.children.push_back(parse_num_expr(e.items[1]));
        n.children.push_back(parse_num_expr(e.items[2]));
        return n;
    }
    if (head == "/") {
        if (e.items.size() != 3)
            arity_error("two operands");
        n.kind = NumExpr::Kind::Div;
        n.children.push_back(parse_num_expr(e.items[1]));
        n.children.push_back(parse_num_expr(e.items[2]));
        return n;
    }
    n.kind = NumExpr::Kind::Fluent;
    n.fluent = parse_atom(e);
    return n;
}

// (at start ...) or (at end ...); a plain "at" is an ordinary predicate.
bool is_timed(const SExpr &e) {
    return e.items.size() == 3 && e.items[0].is_atom("at") && !e.items[1].is_list &&
           (e.items[1].atom == "start" || e.items[1].atom == "end");
}

void parse_condition_into(const SExpr &e, Condition &out) {
    expect_list(e, "a condition");
    if (e.items.empty())
        return;
    if (e.items[0].is_list)
        fail(e.items[0], "a predicate or connective");
    const std::string &head = e.items[0].atom;
    if (head == "and") {
        for (std::size_t i = 1; i < e.items.size(); ++i)
            parse_condition_into(e.items[i], out);
        return;
    }
    if (head == "not")
        throw UnsupportedConstruct("negative condition (not ...)");
    if (head == "or" || head == "imply" || head == "exists" || head == "forall" || head == "preference" ||
        is_timed(e) || head == "over")
        throw UnsupportedConstruct("condition connective '" + head + "'");
    static const std::map<std::string, CmpOp> comparators = {
        {"<", CmpOp::Less}, {"<=", CmpOp::LessEq}, {"=", CmpOp::Equal}, {">", CmpOp::Greater}, {">=", CmpOp::GreaterEq}};
    auto cmp = comparators.find(head);
    if (cmp != comparators.end()) {
        if (e.items.size() != 3)
            fail(e, "a comparison with two operands");
        if (cmp->second == CmpOp::Equal && !e.items[1].is_list && !e.items[2].is_list &&
            !is_number(e.items[1].atom) && !is_number(e.items[2].atom))
            throw UnsupportedConstruct("equality between objects");
        out.comparisons.push_back({cmp->second, parse_num_expr(e.items[1]), parse_num_expr(e.items[2])});
        return;
    }
    out.atoms.push_back(parse_atom(e));
}

Condition parse_condition(const SExpr &e) {
    Condition c;
    parse_condition_into(e, c);
    return c;
}

void parse_effect_into(const SExpr &e, Effect &out) {
    expect_list(e, "an effect");
    if (e.items.empty())
        return;
    if (e.items[0].is_list)
        fail(e.items[0], "an effect keyword or predicate");
    const std::string &head = e.items[0].atom;
    if (head == "and") {
        for (std::size_t i = 1; i < e.items.size(); ++i)
            parse_effect_into(e.items[i], out);
        return;
    }
    if (head == "not") {
        if (e.items.size() != 2)
            fail(e, "(not <atom>)");
        out.dels.push_back(parse_atom(e.items[1]));
        return;
    }
    if (head == "when")
        throw UnsupportedConstruct("conditional effect (when ...)");
    if (head == "forall")
        throw UnsupportedConstruct("universal effect (forall ...)");
    if (head == "scale-up" || head == "scale-down")
        throw UnsupportedConstruct("numeric effect '" + head + "'");
    if (is_timed(e) || head == "increase-rate")
        throw UnsupportedConstruct("temporal effect '" + head + "'");
    if (head == "increase" || head == "decrease" || head == "assign") {
        if (e.items.size() != 3)
            fail(e, "(" + head + " <function-term> <expression>)");
        NumericEffectSpec spec;
        spec.op = head == "increase" ? EffectOp::Increase
                : head == "decrease" ? EffectOp::Decrease
                                     : EffectOp::Assign;
        if (!e.items[1].is_list)
            fail(e.items[1], "a function term");
        spec.fluent = parse_atom(e.items[1]);
        spec.value = parse_num_expr(e.items[2]);
        out.numeric.push_back(std::move(spec));
        return;
    }
    out.adds.push_back(parse_atom(e));
}

struct Scope {
    const DomainAST &domain;
    const std::vector<TypedName> *params = nullptr;
    const std::vector<TypedName> *objects = nullptr;  // problem objects (problem scope only)
    std::string where;

    std::string type_of(const std::string &arg) const {
        if (arg[0] == '?') {
            if (params)
                for (const auto &p : *params)
                    if (p.name == arg)
                        return p.type;
            throw InputError(where + ": undeclared parameter " + arg);
        }
        for (const auto &c : domain.constants)
            if (c.name == arg)
                return c.type;
        if (objects)
            for (const auto &o : *objects)
                if (o.name == arg)
                    return o.type;
        throw InputError(where + ": undeclared object " + arg);
    }

    void check_args(const Atom &a, const Signature &sig, const char *kind) const {
        if (a.args.size() != sig.params.size())
            throw InputError(where + ": " + kind + " " + a.predicate + " expects " +
                             std::to_string(sig.params.size()) + " arguments, got " + std::to_string(a.args.size()));
        for (std::size_t i = 0; i < a.args.size(); ++i) {
            std::string t = type_of(a.args[i]);
            // Parameters may be more general than the slot when typed by a
            // supertype; grounding filters those bindings.
            if (!domain.is_subtype(t, sig.params[i].type) && !domain.is_subtype(sig.params[i].type, t))
                throw InputError(where + ": argument " + a.args[i] + " of " + a.predicate + " has type " + t +
                                 ", expected " + sig.params[i].type);
        }
    }

    void check_atom(const Atom &a) const {
        const Signature *sig = domain.find_predicate(a.predicate);
        if (!sig) {
            if (domain.find_function(a.predicate))
                throw InputError(where + ": function " + a.predicate + " used as a predicate");
            throw InputError(where + ": undeclared predicate " + a.predicate);
        }
        check_args(a, *sig, "predicate");
    }

    void check_fluent(const Atom &a) const {
        const Signature *sig = domain.find_function(a.predicate);
        if (!sig)
            throw InputError(where + ": undeclared function " + a.predicate);
        check_args(a, *sig, "function");
    }

    void check_expr(const NumExpr &n) const {
        if (n.kind == NumExpr::Kind::Fluent)
            check_fluent(n.fluent);
        for (const auto &c : n.children)
            check_expr(c);
    }

    void check_condition(const Condition &c) const {
        for (const auto &a : c.atoms)
            check_atom(a);
        for (const auto &cmp : c.comparisons) {
            check_expr(cmp.lhs);
            check_expr(cmp.rhs);
        }
    }
};

void collect_fluents(const NumExpr &n, std::set<std::string> &out) {
    if (n.kind == NumExpr::Kind::Fluent)
        out.insert(n.fluent.predicate);
    for (const auto &c : n.children)
        collect_fluents(c, out);
}

ActionSchema parse_action(const SExpr &e, const DomainAST &domain) {
    ActionSchema a;
    if (e.items.size() < 2)
        fail(e, "an action name");
    a.name = expect_symbol(e.items[1], "an action name");
    for (std::size_t i = 2; i < e.items.size(); ++i) {
        const SExpr &key = e.items[i];
        const std::string &k = expect_symbol(key, "':parameters', ':precondition' or ':effect'");
        if (i + 1 >= e.items.size())
            fail(key, "a value after " + k);
        const SExpr &val = e.items[++i];
        if (k == ":parameters") {
            a.parameters = parse_typed_list(expect_list(val, "a parameter list").items, 0, true);
        } else if (k == ":precondition") {
            a.precondition = parse_condition(val);
        } else if (k == ":effect") {
            parse_effect_into(val, a.effect);
        } else if (k == ":duration" || k == ":condition") {
            throw UnsupportedConstruct("durative action field " + k);
        } else {
            fail(key, "':parameters', ':precondition' or ':effect'");
        }
    }
    Scope scope{domain, &a.parameters, nullptr, "action " + a.name};
    scope.check_condition(a.precondition);
    for (const auto &x : a.effect.adds) scope.check_atom(x);
    for (const auto &x : a.effect.dels) scope.check_atom(x);
    for (const auto &x : a.effect.numeric) {
        scope.check_fluent(x.fluent);
        scope.check_expr(x.value);
    }
    return a;
}

void parse_signatures(const SExpr &section, std::vector<Signature> &out, bool functions) {
    const auto &items = section.items;
    for (std::size_t i = 1; i < items.size(); ++i) {
        const SExpr &it = items[i];
        if (!it.is_list) {
            if (functions && it.atom == "-") {
                // "- number" return type annotation
                if (i + 1 >= items.size())
                    fail(it, "a return type");
                const std::string &t = expect_symbol(items[++i], "a return type");
                if (t != "number")
                    throw UnsupportedConstruct("function return type " + t);
                continue;
            }
            fail(it, functions ? "a function declaration" : "a predicate declaration");
        }
        if (it.items.empty())
            fail(it, "a name");
        Signature s;
        s.name = expect_symbol(it.items[0], "a name");
        s.params = parse_typed_list(it.items, 1, true);
        out.push_back(std::move(s));
    }
}

}  // namespace

DomainAST parse_domain(std::string_view text) {
    SExpr doc = Reader(text).read_document();
    expect_list(doc, "'(define'");
    if (doc.items.empty() || !doc.items[0].is_atom("define"))
        fail(doc.items.empty() ? doc : doc.items[0], "'define'");
    if (doc.items.size() < 2 || !doc.items[1].is_list || doc.items[1].items.size() != 2 ||
        !doc.items[1].items[0].is_atom("domain"))
        fail(doc.items.size() < 2 ? doc : doc.items[1], "'(domain <name>)'");
    DomainAST d;
    d.name = expect_symbol(doc.items[1].items[1], "a domain name");
    std::set<std::string> declared_types = {"object"};
    for (std::size_t i = 2; i < doc.items.size(); ++i) {
        const SExpr &sec = doc.items[i];
        expect_list(sec, "a domain section");
        if (sec.items.empty())
            fail(sec, "a section keyword");
        const std::string &key = expect_symbol(sec.items[0], "a section keyword");
        if (key == ":requirements") {
            for (std::size_t j = 1; j < sec.items.size(); ++j) {
                const std::string &r = expect_symbol(sec.items[j], "a requirement flag");
                if (rejected_requirements().count(r))
                    throw UnsupportedConstruct("requirement " + r);
                if (!accepted_requirements().count(r))
                    throw UnsupportedConstruct("requirement " + r);
                d.requirements.push_back(r);
            }
        } else if (key == ":types") {
            d.types = parse_typed_list(sec.items, 1, false);
            for (const auto &t : d.types)
                declared_types.insert(t.name);
            for (const auto &t : d.types)
                if (!declared_types.count(t.type)) {
                    d.types.push_back({t.type, "object"});
                    declared_types.insert(t.type);
                }
        } else if (key == ":constants") {
            d.constants = parse_typed_list(sec.items, 1, false);
        } else if (key == ":predicates") {
            parse_signatures(sec, d.predicates, false);
        } else if (key == ":functions") {
            parse_signatures(sec, d.functions, true);
        } else if (key == ":action") {
            d.actions.push_back(parse_action(sec, d));
        } else if (key == ":durative-action") {
            throw UnsupportedConstruct("durative action");
        } else if (key == ":derived") {
            throw UnsupportedConstruct("derived predicate");
        } else if (key == ":constraints") {
            throw UnsupportedConstruct("constraints section");
        } else {
            fail(sec.items[0], "':requirements', ':types', ':constants', ':predicates', ':functions' or ':action'");
        }
    }
    auto check_type = [&](const std::string &t, const std::string &where) {
        if (!declared_types.count(t))
            throw InputError(where + ": undeclared type " + t);
    };
    for (const auto &c : d.constants)
        check_type(c.type, "constant " + c.name);
    for (const auto &p : d.predicates)
        for (const auto &x : p.params)
            check_type(x.type, "predicate " + p.name);
    for (const auto &f : d.functions)
        for (const auto &x : f.params)
            check_type(x.type, "function " + f.name);
    for (const auto &a : d.actions)
        for (const auto &x : a.parameters)
            check_type(x.type, "action " + a.name);
    return d;
}

ProblemAST parse_problem(std::string_view text, const DomainAST &domain) {
    SExpr doc = Reader(text).read_document();
    expect_list(doc, "'(define'");
    if (doc.items.empty() || !doc.items[0].is_atom("define"))
        fail(doc.items.empty() ? doc : doc.items[0], "'define'");
    if (doc.items.size() < 2 || !doc.items[1].is_list || doc.items[1].items.size() != 2 ||
        !doc.items[1].items[0].is_atom("problem"))
        fail(doc.items.size() < 2 ? doc : doc.items[1], "'(problem <name>)'");
    ProblemAST p;
    p.name = expect_symbol(doc.items[1].items[1], "a problem name");
    bool have_goal = false;
    const SExpr *goal_expr = nullptr;
    std::vector<const SExpr *> init_items;
    for (std::size_t i = 2; i < doc.items.size(); ++i) {
        const SExpr &sec = doc.items[i];
        expect_list(sec, "a problem section");
        if (sec.items.empty())
            fail(sec, "a section keyword");
        const std::string &key = expect_symbol(sec.items[0], "a section keyword");
        if (key == ":domain") {
            if (sec.items.size() != 2)
                fail(sec, "(:domain <name>)");
            p.domain_name = expect_symbol(sec.items[1], "a domain name");
        } else if (key == ":requirements") {
            for (std::size_t j = 1; j < sec.items.size(); ++j)
                if (rejected_requirements().count(expect_symbol(sec.items[j], "a requirement flag")))
                    throw UnsupportedConstruct("requirement " + sec.items[j].atom);
        } else if (key == ":objects") {
            p.objects = parse_typed_list(sec.items, 1, false);
        } else if (key == ":init") {
            for (std::size_t j = 1; j < sec.items.size(); ++j)
                init_items.push_back(&sec.items[j]);
        } else if (key == ":goal") {
            if (sec.items.size() != 2)
                fail(sec, "(:goal <condition>)");
            goal_expr = &sec.items[1];
            have_goal = true;
        } else if (key == ":metric") {
            // Plan metrics are not optimised; the section is accepted and ignored.
        } else if (key == ":constraints") {
            throw UnsupportedConstruct("constraints section");
        } else {
            fail(sec.items[0], "':domain', ':objects', ':init', ':goal' or ':metric'");
        }
    }
    if (!p.domain_name.empty() && p.domain_name != domain.name)
        throw InputError("problem " + p.name + " is for domain " + p.domain_name + ", not " + domain.name);
    std::set<std::string> names;
    for (const auto &c : domain.constants)
        names.insert(c.name);
    for (const auto &o : p.objects) {
        if (!domain.is_subtype(o.type, "object") ||
            (o.type != "object" && std::none_of(domain.types.begin(), domain.types.end(),
                                                [&](const TypedName &t) { return t.name == o.type; })))
            throw InputError("object " + o.name + " has undeclared type " + o.type);
        if (!names.insert(o.name).second)
            throw InputError("object " + o.name + " declared twice");
    }
    Scope scope{domain, nullptr, &p.objects, "problem " + p.name};
    for (const SExpr *item : init_items) {
        const SExpr &e = *item;
        expect_list(e, "an initial atom or (= <function-term> <number>)");
        if (!e.items.empty() && e.items[0].is_atom("at") && e.items.size() == 3 && !e.items[1].is_list &&
            is_number(e.items[1].atom))
            throw UnsupportedConstruct("timed initial literal");
        if (!e.items.empty() && e.items[0].is_atom("=")) {
            if (e.items.size() != 3 || !e.items[1].is_list)
                fail(e, "(= <function-term> <number>)");
            if (e.items[2].is_list || !is_number(e.items[2].atom))
                fail(e.items[2], "a number");
            Atom f = parse_atom(e.items[1]);
            scope.check_fluent(f);
            p.init_values.emplace_back(std::move(f), parse_rational(e.items[2].atom));
            continue;
        }
        if (!e.items.empty() && e.items[0].is_atom("not"))
            throw UnsupportedConstruct("negative initial literal");
        Atom a = parse_atom(e);
        scope.check_atom(a);
        p.init_atoms.push_back(std::move(a));
    }
    if (have_goal) {
        p.goal = parse_condition(*goal_expr);
        scope.check_condition(p.goal);
    }
    // Every 0-ary function used by an action or the goal needs an initial
    // value; parameterised ones are checked per ground term in ground().
    std::set<std::string> used;
    for (const auto &a : domain.actions) {
        for (const auto &c : a.precondition.comparisons) {
            collect_fluents(c.lhs, used);
            collect_fluents(c.rhs, used);
        }
        for (const auto &n : a.effect.numeric) {
            used.insert(n.fluent.predicate);
            collect_fluents(n.value, used);
        }
    }
    for (const auto &c : p.goal.comparisons) {
        collect_fluents(c.lhs, used);
        collect_fluents(c.rhs, used);
    }
    for (const auto &f : domain.functions) {
        if (!f.params.empty() || !used.count(f.name))
            continue;
        bool has = std::any_of(p.init_values.begin(), p.init_values.end(),
                               [&](const auto &iv) { return iv.first.predicate == f.name; });
        if (!has)
            throw InputError("missing initial value for (" + f.name + ")");
    }
    return p;
}

}  // namespace pddl

GroundTask load_task(const std::string &domain_path, const std::string &problem_path,
                     const GroundingOptions &options) {
    pddl::DomainAST d = pddl::parse_domain(read_file(domain_path));
    pddl::ProblemAST p = pddl::parse_problem(read_file(problem_path), d);
    return ground(d, p, options);
}

}  // namespace lprpg
