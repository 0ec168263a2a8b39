#pragma once

// Emission of the matching problem as a logic program (ASP-Core-2 dialect
// with clingo-style |..| absolute values), plus the tooling needed to
// cross-validate against an external answer-set solver: a grammar validator
// for the emitted text, a fact parser that reconstructs preference orders,
// and a room/2 answer-set reader.
//
// Ties are encoded by omitting prefer2 facts between tied agents; strict
// preference between non-adjacent tiers is recovered by a transitive
// closure rule. prefer2(x,y,x) states that x prefers y over staying single.

#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "srti/core.hpp"
#include "srti/objectives.hpp"

namespace srti::asp {

namespace detail {

inline std::string sanitize(const std::string& raw) {
    std::string out;
    for (char c : raw) {
        if (std::isalnum(static_cast<unsigned char>(c)))
            out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        else
            out.push_back('_');
    }
    if (out.empty() || !std::islower(static_cast<unsigned char>(out.front()))) out = "x" + out;
    return out;
}

// Sanitizes a list of names, suffixing collisions in order of appearance.
inline std::vector<std::string> sanitize_all(const std::vector<std::string>& names) {
    std::vector<std::string> out;
    std::map<std::string, int> used;
    for (const auto& name : names) {
        std::string sym = sanitize(name);
        auto [it, fresh] = used.emplace(sym, 1);
        if (!fresh) {
            ++it->second;
            sym += "_" + std::to_string(it->second);
            used.emplace(sym, 1);
        }
        out.push_back(sym);
    }
    return out;
}

inline void hash_mix(std::uint64_t& h, const std::string& s) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    h ^= 0xff;
    h *= 0x100000001b3ULL;
}

inline void hash_mix(std::uint64_t& h, long long v) { hash_mix(h, std::to_string(v)); }

}  // namespace detail

// ASP constant symbols for the instance's agents, in agent-index order.
inline std::vector<std::string> agent_symbols(const Instance& inst) {
    return detail::sanitize_all(inst.ids());
}

// Structural hash of an instance, stable across runs and platforms.
inline std::uint64_t instance_hash(const Instance& inst) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    detail::hash_mix(h, inst.size());
    for (Agent a = 0; a < inst.size(); ++a) {
        detail::hash_mix(h, inst.id(a));
        for (const auto& tier : inst.order(a).tiers) {
            detail::hash_mix(h, "|");
            for (Agent b : tier) detail::hash_mix(h, inst.id(b));
        }
    }
    if (inst.has_criteria()) {
        for (const auto& c : inst.criteria().criteria) {
            detail::hash_mix(h, c.name);
            for (const auto& l : c.choices) detail::hash_mix(h, l);
        }
        for (int i : inst.criteria().priority_order) detail::hash_mix(h, i);
        for (Agent a = 0; a < inst.size(); ++a) {
            const AgentProfile& p = inst.profile(a);
            for (int v : p.choices) detail::hash_mix(h, v);
            for (int v : p.weights) detail::hash_mix(h, v);
            detail::hash_mix(h, p.smoker ? 1 : 0);
            detail::hash_mix(h, p.comfortable_with_smoker ? 1 : 0);
            detail::hash_mix(h, p.department.value_or(""));
        }
    }
    for (auto [a, b] : inst.forbidden()) {
        detail::hash_mix(h, inst.id(a));
        detail::hash_mix(h, inst.id(b));
    }
    detail::hash_mix(h, inst.explicit_first() ? 1 : 0);
    return h;
}

inline std::string emit_program(const Instance& inst, const ObjectiveConfig& config = {}) {
    const std::vector<std::string> sym = agent_symbols(inst);
    std::vector<std::string> crit_pred;
    if (inst.has_criteria()) {
        std::vector<std::string> names;
        for (const auto& c : inst.criteria().criteria) names.push_back(c.name);
        crit_pred = detail::sanitize_all(names);
        for (auto& p : crit_pred) p = "c_" + p;
    }

    std::ostringstream out;
    out << "% roommate matching program\n";
    {
        std::ostringstream hex;
        hex << std::hex << instance_hash(inst);
        out << "% instance hash: " << hex.str() << "\n";
    }
    out << "% objective levels:";
    if (config.empty()) out << " none";
    for (int i = 0; i < config.size(); ++i) {
        const auto& l = config.levels[i];
        out << " " << (config.size() - i) << ":";
        switch (l.kind) {
            case LevelKind::criterion: out << crit_pred[l.criterion]; break;
            case LevelKind::smoking: out << "smoking"; break;
            case LevelKind::diversity: out << "diversity"; break;
        }
    }
    out << "\n";
    out << "% prefer2(x,y,z): x prefers y to z; prefer2(x,y,x): x prefers y over single.\n";
    out << "% prefer/3 is an alias of prefer2/3.\n\n";

    out << "% agents\n";
    for (Agent a = 0; a < inst.size(); ++a) out << "agent(" << sym[a] << ").\n";

    out << "\n% preferences (facts span consecutive tie groups only)\n";
    for (Agent x = 0; x < inst.size(); ++x) {
        for (Agent y : inst.acceptable(x))
            out << "prefer2(" << sym[x] << "," << sym[y] << "," << sym[x] << ").\n";
        const auto& tiers = inst.order(x).tiers;
        for (size_t t = 0; t + 1 < tiers.size(); ++t)
            for (Agent y : tiers[t])
                for (Agent z : tiers[t + 1])
                    out << "prefer2(" << sym[x] << "," << sym[y] << "," << sym[z] << ").\n";
    }

    if (inst.has_criteria()) {
        out << "\n% questionnaire data\n";
        const int k = inst.criteria().count();
        for (int i = 0; i < k; ++i)
            for (Agent a = 0; a < inst.size(); ++a)
                out << crit_pred[i] << "(" << sym[a] << "," << inst.profile(a).choices[i]
                    << ").\n";
        for (Agent a = 0; a < inst.size(); ++a) {
            const AgentProfile& p = inst.profile(a);
            out << (p.smoker ? "smoker(" : "nonsmoker(") << sym[a] << ").\n";
            out << "comfortableSmoker(" << sym[a] << "," << (p.comfortable_with_smoker ? 1 : 2)
                << ").\n";
        }
        std::vector<std::string> depts;
        for (Agent a = 0; a < inst.size(); ++a)
            if (inst.profile(a).department &&
                std::find(depts.begin(), depts.end(), *inst.profile(a).department) == depts.end())
                depts.push_back(*inst.profile(a).department);
        if (!depts.empty()) {
            const std::vector<std::string> dsym = detail::sanitize_all(depts);
            for (Agent a = 0; a < inst.size(); ++a) {
                if (!inst.profile(a).department) continue;
                const auto pos = std::find(depts.begin(), depts.end(),
                                           *inst.profile(a).department) -
                                 depts.begin();
                out << "department(" << sym[a] << "," << dsym[pos] << ").\n";
            }
        }
    }

    if (!inst.forbidden().empty()) {
        out << "\n% forbidden pairs\n";
        for (auto [a, b] : inst.forbidden())
            out << "forbidden(" << sym[a] << "," << sym[b] << ").\n";
    }

    out << "\n% acceptability\n";
    out << "prefer(X,Y,Z) :- prefer2(X,Y,Z).\n";
    out << "accept(X,Y) :- prefer(X,Y,_).\n";
    out << "accept(X,Y) :- prefer(X,_,Y).\n";
    out << "accept(X,X) :- agent(X).\n";
    out << "accept2(X,Y) :- accept(X,Y), accept(Y,X).\n";

    out << "\n% one roommate (possibly oneself) per agent\n";
    out << "1 { room(X,Y) : agent(Y), accept2(X,Y) } 1 :- agent(X).\n";
    out << ":- room(X,Y), not room(Y,X).\n";

    out << "\n% stability\n";
    out << "prefs(X,Y,Z) :- prefer2(X,Y,Z).\n";
    out << "prefs(X,Y,W) :- prefs(X,Y,Z), prefer2(X,Z,W).\n";
    out << "better(X,Y) :- accept2(X,Y), X != Y, room(X,X).\n";
    out << "better(X,Y) :- accept2(X,Y), X != Y, room(X,Z), X != Z, prefs(X,Y,Z).\n";
    out << "block(X,Y) :- better(X,Y), better(Y,X).\n";
    out << ":- block(X,Y).\n";

    if (!inst.forbidden().empty()) {
        out << "\n% forbidden pairs may not room together\n";
        out << ":- forbidden(X,Y), room(X,Y).\n";
        out << ":- forbidden(X,Y), room(Y,X).\n";
    }

    bool smoking_rules = false;
    for (const auto& l : config.levels) smoking_rules |= (l.kind == LevelKind::smoking);
    if (smoking_rules) {
        out << "\n% smoking comfort\n";
        out << "smokeComfor(X,Y) :- nonsmoker(X), comfortableSmoker(X,1), smoker(Y).\n";
        out << "-smokeComfor(X,Y) :- comfortableSmoker(X,2), smoker(Y).\n";
    }

    if (!config.empty()) out << "\n% objective (higher priority first)\n";
    for (int i = 0; i < config.size(); ++i) {
        const auto& l = config.levels[i];
        const int p = config.size() - i;
        switch (l.kind) {
            case LevelKind::criterion:
                out << ":~ room(X,Y), X != Y, " << crit_pred[l.criterion] << "(X,R1), "
                    << crit_pred[l.criterion] << "(Y,R2). [|R1-R2|@" << p << ",X,Y]\n";
                break;
            case LevelKind::smoking:
                out << ":~ room(X,Y), X != Y, not smokeComfor(X,Y), nonsmoker(X), smoker(Y). [1@"
                    << p << ",X,Y]\n";
                out << ":~ room(X,Y), X != Y, -smokeComfor(X,Y), smoker(X), smoker(Y). [1@" << p
                    << ",X,Y]\n";
                break;
            case LevelKind::diversity:
                out << ":~ room(X,Y), X != Y, department(X,D), department(Y,D). [1@" << p
                    << ",X,Y]\n";
                break;
        }
    }

    out << "\n#show room/2.\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// Grammar validator

namespace detail {

struct Token {
    enum Kind { ident, variable, number, punct, end } kind = end;
    std::string text;
    int line = 0;
};

class Lexer {
  public:
    explicit Lexer(const std::string& src) : src_(src) {}

    Token next() {
        skip_space();
        Token t;
        t.line = line_;
        if (pos_ >= src_.size()) return t;
        const char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                          src_[pos_] == '_'))
                ++pos_;
            t.text = src_.substr(start, pos_ - start);
            t.kind = (std::isupper(static_cast<unsigned char>(c)) || c == '_') ? Token::variable
                                                                               : Token::ident;
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                ++pos_;
            t.text = src_.substr(start, pos_ - start);
            t.kind = Token::number;
            return t;
        }
        t.kind = Token::punct;
        for (const char* two : {":-", ":~", "!=", "<=", ">=", "=="}) {
            if (src_.compare(pos_, 2, two) == 0) {
                t.text = two;
                pos_ += 2;
                return t;
            }
        }
        t.text = std::string(1, c);
        ++pos_;
        return t;
    }

  private:
    void skip_space() {
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (c == '%') {
                while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
            } else if (c == '\n') {
                ++line_;
                ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    const std::string& src_;
    size_t pos_ = 0;
    int line_ = 1;
};

// Recursive-descent checker for the emitted dialect: facts, normal rules,
// hard constraints, cardinality-bounded choice rules, weak constraints with
// term tuples, #show directives, comparison builtins, classical negation,
// arithmetic with |..| absolute values.
class Validator {
  public:
    explicit Validator(const std::string& src) : lex_(src) { advance(); }

    std::optional<std::string> check() {
        try {
            while (cur_.kind != Token::end) statement();
        } catch (const std::runtime_error& e) {
            return e.what();
        }
        return std::nullopt;
    }

  private:
    [[noreturn]] void fail(const std::string& msg) {
        throw std::runtime_error("line " + std::to_string(cur_.line) + ": " + msg +
                                 " (near '" + cur_.text + "')");
    }

    void advance() { cur_ = lex_.next(); }

    bool accept(const std::string& p) {
        if (cur_.kind == Token::punct && cur_.text == p) {
            advance();
            return true;
        }
        return false;
    }

    void expect(const std::string& p) {
        if (!accept(p)) fail("expected '" + p + "'");
    }

    void statement() {
        if (cur_.kind == Token::punct && cur_.text == "#") {
            directive();
            return;
        }
        if (accept(":~")) {
            if (!(cur_.kind == Token::punct && cur_.text == ".")) body();
            expect(".");
            weak_terms();
            return;
        }
        if (accept(":-")) {
            body();
            expect(".");
            return;
        }
        head();
        if (accept(":-")) body();
        expect(".");
    }

    void directive() {
        expect("#");
        if (cur_.kind != Token::ident || cur_.text != "show") fail("unknown directive");
        advance();
        if (cur_.kind != Token::ident) fail("expected predicate name");
        advance();
        expect("/");
        if (cur_.kind != Token::number) fail("expected arity");
        advance();
        expect(".");
    }

    void head() {
        if (cur_.kind == Token::number || (cur_.kind == Token::punct && cur_.text == "{")) {
            if (cur_.kind == Token::number) advance();
            expect("{");
            choice_element();
            while (accept(";")) choice_element();
            expect("}");
            if (cur_.kind == Token::number) advance();
            return;
        }
        classical_atom();
    }

    void choice_element() {
        classical_atom();
        if (accept(":")) {
            naf_literal();
            while (accept(",")) naf_literal();
        }
    }

    void body() {
        naf_literal();
        while (accept(",")) naf_literal();
    }

    void naf_literal() {
        if (cur_.kind == Token::ident && cur_.text == "not") advance();
        if (cur_.kind == Token::punct && cur_.text == "-") {
            advance();
            atom();
            return;
        }
        bool atom_shaped = false;
        term(&atom_shaped);
        if (cur_.kind == Token::punct &&
            (cur_.text == "=" || cur_.text == "==" || cur_.text == "!=" || cur_.text == "<" ||
             cur_.text == "<=" || cur_.text == ">" || cur_.text == ">=")) {
            advance();
            term(nullptr);
            return;
        }
        if (!atom_shaped) fail("expected an atom or a comparison");
    }

    void classical_atom() {
        if (accept("-")) {
            atom();
            return;
        }
        atom();
    }

    void atom() {
        if (cur_.kind != Token::ident) fail("expected predicate symbol");
        advance();
        if (accept("(")) {
            term(nullptr);
            while (accept(",")) term(nullptr);
            expect(")");
        }
    }

    void weak_terms() {
        expect("[");
        term(nullptr);
        expect("@");
        term(nullptr);
        while (accept(",")) term(nullptr);
        expect("]");
    }

    // atom_shaped reports whether the parsed term could stand as an atom.
    void term(bool* atom_shaped) {
        add_expr(atom_shaped);
    }

    void add_expr(bool* atom_shaped) {
        mul_expr(atom_shaped);
        while (cur_.kind == Token::punct && (cur_.text == "+" || cur_.text == "-")) {
            if (atom_shaped) *atom_shaped = false;
            advance();
            mul_expr(nullptr);
        }
    }

    void mul_expr(bool* atom_shaped) {
        unary_expr(atom_shaped);
        while (cur_.kind == Token::punct && (cur_.text == "*" || cur_.text == "/")) {
            if (atom_shaped) *atom_shaped = false;
            advance();
            unary_expr(nullptr);
        }
    }

    void unary_expr(bool* atom_shaped) {
        if (accept("-")) {
            if (atom_shaped) *atom_shaped = false;
            unary_expr(nullptr);
            return;
        }
        primary(atom_shaped);
    }

    void primary(bool* atom_shaped) {
        if (atom_shaped) *atom_shaped = false;
        if (cur_.kind == Token::number) {
            advance();
            return;
        }
        if (cur_.kind == Token::variable) {
            advance();
            return;
        }
        if (cur_.kind == Token::ident) {
            if (atom_shaped) *atom_shaped = true;
            advance();
            if (accept("(")) {
                term(nullptr);
                while (accept(",")) term(nullptr);
                expect(")");
            }
            return;
        }
        if (accept("(")) {
            term(nullptr);
            expect(")");
            return;
        }
        if (accept("|")) {
            term(nullptr);
            expect("|");
            return;
        }
        fail("expected a term");
    }

    Lexer lex_;
    Token cur_;
};

}  // namespace detail

// Returns an error description, or nullopt when the program parses.
inline std::optional<std::string> validate_program(const std::string& text) {
    detail::Validator v(text);
    return v.check();
}

// ---------------------------------------------------------------------------
// Fact extraction

namespace detail {

struct GroundAtom {
    std::string pred;
    std::vector<std::string> args;
};

// Ground occurrences of pred(constant, ...) in the text. Occurrences with
// variable arguments (rule bodies) are skipped. When require_dot is set,
// only statement-level facts terminated by '.' count.
inline std::vector<GroundAtom> scan_facts(const std::string& text, const std::string& pred,
                                          bool require_dot = true) {
    std::vector<GroundAtom> out;
    Lexer lex(text);
    Token t = lex.next();
    while (t.kind != Token::end) {
        if (!(t.kind == Token::ident && t.text == pred)) {
            t = lex.next();
            continue;
        }
        t = lex.next();
        if (!(t.kind == Token::punct && t.text == "(")) continue;
        GroundAtom atom;
        atom.pred = pred;
        bool ok = true;
        t = lex.next();
        while (true) {
            if (t.kind != Token::ident && t.kind != Token::number) {
                ok = false;
                break;
            }
            atom.args.push_back(t.text);
            t = lex.next();
            if (t.kind == Token::punct && t.text == ",") {
                t = lex.next();
                continue;
            }
            if (t.kind == Token::punct && t.text == ")") {
                t = lex.next();
                break;
            }
            ok = false;
            break;
        }
        if (ok && require_dot) ok = (t.kind == Token::punct && t.text == ".");
        if (ok) out.push_back(atom);
    }
    return out;
}

}  // namespace detail

// Preference orders reconstructed from agent/1 and prefer2/3 facts:
// acceptability from the over-single facts, tier layering by repeatedly
// peeling agents nothing else points at.
inline std::map<std::string, std::vector<std::vector<std::string>>> reconstruct_orders(
    const std::string& text) {
    std::map<std::string, std::vector<std::vector<std::string>>> out;
    for (const auto& atom : detail::scan_facts(text, "agent"))
        if (atom.args.size() == 1) out[atom.args[0]];

    std::map<std::string, std::vector<std::string>> members;
    std::map<std::string, std::vector<std::pair<std::string, std::string>>> edges;
    for (const auto& atom : detail::scan_facts(text, "prefer2")) {
        if (atom.args.size() != 3) continue;
        const std::string& x = atom.args[0];
        if (atom.args[2] == x)
            members[x].push_back(atom.args[1]);
        else
            edges[x].emplace_back(atom.args[1], atom.args[2]);
    }

    for (auto& [x, listed] : members) {
        std::map<std::string, int> indeg;
        for (const auto& a : listed) indeg[a] = 0;
        for (const auto& [from, to] : edges[x]) ++indeg[to];
        std::vector<std::vector<std::string>> tiers;
        std::map<std::string, bool> placed;
        size_t remaining = indeg.size();
        while (remaining > 0) {
            std::vector<std::string> tier;
            for (const auto& a : listed)
                if (!placed[a] && indeg[a] == 0) tier.push_back(a);
            if (tier.empty()) throw ParseError("prefer2 facts of '" + x + "' contain a cycle");
            for (const auto& a : tier) {
                placed[a] = true;
                --remaining;
                for (const auto& [from, to] : edges[x])
                    if (from == a) --indeg[to];
            }
            tiers.push_back(std::move(tier));
        }
        out[x] = std::move(tiers);
    }
    return out;
}

// Reads room/2 atoms from an answer set and builds the matching they
// describe, resolving symbols through the instance's sanitized agent names.
inline Matching parse_room_atoms(const std::string& text, const Instance& inst) {
    const std::vector<std::string> sym = agent_symbols(inst);
    std::map<std::string, Agent> lookup;
    for (Agent a = 0; a < inst.size(); ++a) lookup[sym[a]] = a;

    Matching m(inst.size());
    for (const auto& atom : detail::scan_facts(text, "room", /*require_dot=*/false)) {
        if (atom.args.size() != 2) continue;
        auto ia = lookup.find(atom.args[0]);
        auto ib = lookup.find(atom.args[1]);
        if (ia == lookup.end() || ib == lookup.end())
            throw ParseError("room atom references an unknown agent symbol");
        if (ia->second != ib->second) m.set_pair(ia->second, ib->second);
    }
    return m;
}

}  // namespace srti::asp
