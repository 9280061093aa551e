#include "jb/sysfile.hpp"

#include <cctype>
#include <sstream>

namespace jb {

namespace {

enum class Tok { Ident, Number, LBrack, RBrack, LParen, RParen, Comma, Plus, Minus, Star, Caret, Arrow, Equals, End };

struct Token {
    Tok kind;
    std::string text;
};

class Lexer {
public:
    Lexer(const std::string& line, int lineno) : s_(line), line_(lineno) { advance(); }

    const Token& peek() const { return cur_; }
    Token take() {
        Token t = cur_;
        advance();
        return t;
    }
    int lineno() const { return line_; }

private:
    std::string s_;
    size_t pos_ = 0;
    Token cur_;
    int line_;

    void advance() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (pos_ >= s_.size() || s_[pos_] == '#') {
            cur_ = {Tok::End, ""};
            return;
        }
        char c = s_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            cur_ = {Tok::Ident, s_.substr(start, pos_ - start)};
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            // A rational literal is digits/digits with no spaces.
            if (pos_ < s_.size() && s_[pos_] == '/' && pos_ + 1 < s_.size() &&
                std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
                ++pos_;
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                    ++pos_;
            }
            cur_ = {Tok::Number, s_.substr(start, pos_ - start)};
            return;
        }
        ++pos_;
        switch (c) {
        case '[': cur_ = {Tok::LBrack, "["}; return;
        case ']': cur_ = {Tok::RBrack, "]"}; return;
        case '(': cur_ = {Tok::LParen, "("}; return;
        case ')': cur_ = {Tok::RParen, ")"}; return;
        case ',': cur_ = {Tok::Comma, ","}; return;
        case '+': cur_ = {Tok::Plus, "+"}; return;
        case '-':
            if (pos_ < s_.size() && s_[pos_] == '>') {
                ++pos_;
                cur_ = {Tok::Arrow, "->"};
            } else {
                cur_ = {Tok::Minus, "-"};
            }
            return;
        case '*': cur_ = {Tok::Star, "*"}; return;
        case '^': cur_ = {Tok::Caret, "^"}; return;
        case '=': cur_ = {Tok::Equals, "="}; return;
        case '/':
            throw parse_error("division is not supported outside rational literals", line_);
        default:
            throw parse_error(std::string("unexpected character '") + c + "'", line_);
        }
    }
};

class ExprParser {
public:
    ExprParser(Lexer& lex, const UniversePtr& uni) : lex_(lex), uni_(uni) {}

    DiffPoly parse() { return expr(); }

private:
    Lexer& lex_;
    const UniversePtr& uni_;

    [[noreturn]] void fail(const std::string& msg) {
        throw parse_error(msg, lex_.lineno());
    }

    DiffPoly expr() {
        DiffPoly p = term();
        while (lex_.peek().kind == Tok::Plus || lex_.peek().kind == Tok::Minus) {
            bool plus = lex_.take().kind == Tok::Plus;
            DiffPoly q = term();
            p = plus ? p + q : p - q;
        }
        return p;
    }

    DiffPoly term() {
        DiffPoly p = factor();
        while (lex_.peek().kind == Tok::Star) {
            lex_.take();
            p = p * factor();
        }
        return p;
    }

    DiffPoly factor() {
        if (lex_.peek().kind == Tok::Minus) {
            lex_.take();
            return -factor();
        }
        DiffPoly a = atom();
        if (lex_.peek().kind == Tok::Caret) {
            lex_.take();
            Token e = lex_.take();
            if (e.kind != Tok::Number || e.text.find('/') != std::string::npos)
                fail("exponent must be a non-negative integer");
            long k = std::stol(e.text);
            return a.pow(static_cast<int>(k));
        }
        return a;
    }

    DiffPoly atom() {
        Token t = lex_.take();
        switch (t.kind) {
        case Tok::Number: {
            Q q(t.text);
            q.canonicalize();
            return DiffPoly::constant(uni_, q);
        }
        case Tok::LParen: {
            DiffPoly p = expr();
            if (lex_.take().kind != Tok::RParen)
                fail("expected ')'");
            if (lex_.peek().kind == Tok::Caret) {
                lex_.take();
                Token e = lex_.take();
                if (e.kind != Tok::Number || e.text.find('/') != std::string::npos)
                    fail("exponent must be a non-negative integer");
                return p.pow(static_cast<int>(std::stol(e.text)));
            }
            return p;
        }
        case Tok::Ident: {
            if (lex_.peek().kind == Tok::LBrack) {
                lex_.take();
                MultiIndex idx(uni_->dim());
                size_t slot = 0;
                while (true) {
                    Token num = lex_.take();
                    if (num.kind != Tok::Number || num.text.find('/') != std::string::npos)
                        fail("jet index entries must be non-negative integers");
                    if (slot >= uni_->dim())
                        fail("jet index longer than the number of base variables");
                    idx[slot++] = static_cast<int>(std::stol(num.text));
                    Token sep = lex_.take();
                    if (sep.kind == Tok::RBrack)
                        break;
                    if (sep.kind != Tok::Comma)
                        fail("expected ',' or ']' in jet index");
                }
                if (slot != uni_->dim())
                    fail("jet index shorter than the number of base variables");
                auto sym = uni_->find_symbol(t.text);
                if (!sym)
                    fail("jet access on undeclared symbol " + t.text);
                if (uni_->symbols()[*sym].kind == SymbolKind::Inverse)
                    fail("jet access on inverse symbol " + t.text);
                return DiffPoly::jet(uni_, *sym, idx);
            }
            if (auto b = uni_->find_base(t.text))
                return DiffPoly::base(uni_, *b);
            if (auto sym = uni_->find_symbol(t.text))
                return DiffPoly::jet(uni_, *sym, MultiIndex(uni_->dim()));
            fail("undeclared identifier " + t.text);
        }
        default:
            fail("unexpected token '" + t.text + "'");
        }
    }
};

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    lines.push_back(cur);
    return lines;
}

} // namespace

PDESystem parse_system(const std::string& text) {
    PDESystem sys;
    bool have_system = false, have_base = false;
    int lineno = 0;
    for (const std::string& raw : split_lines(text)) {
        ++lineno;
        Lexer lex(raw, lineno);
        if (lex.peek().kind == Tok::End)
            continue;
        Token head = lex.take();
        if (head.kind != Tok::Ident)
            throw parse_error("expected a declaration keyword", lineno);

        if (head.text == "system") {
            if (have_system)
                throw parse_error("duplicate system line", lineno);
            Token name = lex.take();
            if (name.kind != Tok::Ident)
                throw parse_error("expected system name", lineno);
            sys.name = name.text;
            have_system = true;
            continue;
        }
        if (!have_system)
            throw parse_error("file must start with a system line", lineno);

        if (head.text == "base") {
            if (have_base)
                throw parse_error("duplicate base line", lineno);
            std::vector<std::string> names;
            while (lex.peek().kind == Tok::Ident)
                names.push_back(lex.take().text);
            if (lex.peek().kind != Tok::End)
                throw parse_error("unexpected token in base line", lineno);
            if (names.empty())
                throw parse_error("base line needs at least one variable", lineno);
            sys.uni = Universe::create(names);
            have_base = true;
            continue;
        }
        if (!have_base)
            throw parse_error("base variables must be declared before " + head.text, lineno);

        if (head.text == "unknown") {
            while (lex.peek().kind == Tok::Ident) {
                std::string nm = lex.take().text;
                try {
                    sys.unknowns.push_back(sys.uni->declare_symbol(nm, SymbolKind::Unknown));
                } catch (const error& e) {
                    throw parse_error(e.what(), lineno);
                }
            }
            if (lex.peek().kind != Tok::End)
                throw parse_error("unexpected token in unknown line", lineno);
            continue;
        }
        if (head.text == "param") {
            Token name = lex.take();
            if (name.kind != Tok::Ident)
                throw parse_error("expected parameter name", lineno);
            size_t sym;
            try {
                sym = sys.uni->declare_symbol(name.text, SymbolKind::Parameter);
            } catch (const error& e) {
                throw parse_error(e.what(), lineno);
            }
            sys.params.push_back(sym);
            if (lex.peek().kind == Tok::End)
                continue;
            Token kw = lex.take();
            if (kw.kind != Tok::Ident || kw.text != "diff")
                throw parse_error("expected 'diff' after parameter name", lineno);
            // Mark every ruled direction before parsing any rule body, so
            // bodies see the complete rule signature and self-referential
            // expansions surface as cycles instead of creating stale jets.
            std::vector<std::pair<size_t, std::vector<Token>>> specs;
            while (true) {
                Token dir = lex.take();
                if (dir.kind != Tok::Ident)
                    throw parse_error("expected direction name in diff clause", lineno);
                auto b = sys.uni->find_base(dir.text);
                if (!b)
                    throw parse_error("unknown direction " + dir.text, lineno);
                if (sys.uni->has_rule(sym, *b))
                    throw parse_error("duplicate rule for direction " + dir.text, lineno);
                if (lex.take().kind != Tok::Arrow)
                    throw parse_error("expected '->' in diff clause", lineno);
                std::vector<Token> body;
                int depth = 0;
                while (true) {
                    const Token& p = lex.peek();
                    if (p.kind == Tok::End)
                        break;
                    if (p.kind == Tok::Comma && depth == 0)
                        break;
                    if (p.kind == Tok::LParen || p.kind == Tok::LBrack)
                        ++depth;
                    if (p.kind == Tok::RParen || p.kind == Tok::RBrack)
                        --depth;
                    body.push_back(lex.take());
                }
                if (body.empty())
                    throw parse_error("empty rule body", lineno);
                sys.uni->open_rule(sym, *b);
                specs.emplace_back(*b, std::move(body));
                if (lex.peek().kind == Tok::End)
                    break;
                lex.take(); // comma
            }
            for (auto& [dirIdx, body] : specs) {
                std::string src;
                for (auto& tk : body)
                    src += tk.text + " ";
                Lexer sub(src, lineno);
                ExprParser ep(sub, sys.uni);
                DiffPoly value = ep.parse();
                if (sub.peek().kind != Tok::End)
                    throw parse_error("trailing tokens in rule body", lineno);
                sys.uni->install_rule(sym, dirIdx, value);
            }
            continue;
        }
        if (head.text == "invertible") {
            ExprParser ep(lex, sys.uni);
            DiffPoly p = ep.parse();
            if (lex.peek().kind != Tok::End)
                throw parse_error("trailing tokens after invertible expression", lineno);
            if (p.is_zero())
                throw parse_error("invertible expression is identically zero", lineno);
            sys.invertibles.push_back(std::move(p));
            continue;
        }
        if (head.text == "eq") {
            Token name = lex.take();
            if (name.kind != Tok::Ident)
                throw parse_error("expected equation name", lineno);
            for (auto& e : sys.eqs)
                if (e.name == name.text)
                    throw parse_error("duplicate equation name " + name.text, lineno);
            if (lex.take().kind != Tok::Equals)
                throw parse_error("expected '=' after equation name", lineno);
            ExprParser ep(lex, sys.uni);
            DiffPoly p = ep.parse();
            if (lex.peek().kind != Tok::End)
                throw parse_error("trailing tokens after equation", lineno);
            if (p.is_zero())
                throw parse_error("equation " + name.text + " is identically zero", lineno);
            sys.eqs.push_back({name.text, p, order(p)});
            continue;
        }
        throw parse_error("unknown declaration " + head.text, lineno);
    }
    if (!have_system)
        throw parse_error("empty input; expected a system line", 0);
    if (!have_base)
        throw parse_error("missing base line", 0);
    return sys;
}

std::string print_system(const PDESystem& sys) {
    std::ostringstream os;
    os << "system " << sys.name << "\n";
    os << "base";
    for (auto& b : sys.uni->base_names())
        os << " " << b;
    os << "\n";
    if (!sys.unknowns.empty()) {
        os << "unknown";
        for (size_t s : sys.unknowns)
            os << " " << sys.uni->symbols()[s].name;
        os << "\n";
    }
    for (size_t s : sys.params) {
        const Symbol& sym = sys.uni->symbols()[s];
        os << "param " << sym.name;
        bool first = true;
        for (auto& [dir, value] : sym.rules) {
            os << (first ? " diff " : ", ") << sys.uni->base_names()[dir] << " -> "
               << value->str();
            first = false;
        }
        os << "\n";
    }
    for (auto& inv : sys.invertibles)
        os << "invertible " << inv.str() << "\n";
    for (auto& e : sys.eqs)
        os << "eq " << e.name << " = " << e.poly.str() << "\n";
    return os.str();
}

DiffPoly parse_expression(const PDESystem& sys, const std::string& text) {
    Lexer lex(text, 0);
    ExprParser ep(lex, sys.uni);
    DiffPoly p = ep.parse();
    if (lex.peek().kind != Tok::End)
        throw parse_error("trailing tokens in expression", 0);
    return p;
}

} // namespace jb
