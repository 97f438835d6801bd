#include "orthomod/formula.hpp"

#include <cctype>
#include <sstream>
#include <utility>

namespace orthomod {

Formula Formula::var(std::string name) {
    if (name.empty())
        throw std::invalid_argument("variable name must be nonempty");
    return Formula(std::make_shared<const Node>(
        Node{Kind::Var, std::move(name), nullptr, nullptr}));
}

Formula Formula::top() {
    return Formula(
        std::make_shared<const Node>(Node{Kind::Top, {}, nullptr, nullptr}));
}

Formula Formula::bottom() {
    return Formula(std::make_shared<const Node>(
        Node{Kind::Bottom, {}, nullptr, nullptr}));
}

Formula Formula::negation(Formula child) {
    return Formula(std::make_shared<const Node>(
        Node{Kind::Not, {}, std::move(child.node_), nullptr}));
}

Formula Formula::conjunction(Formula left, Formula right) {
    return Formula(std::make_shared<const Node>(Node{
        Kind::And, {}, std::move(left.node_), std::move(right.node_)}));
}

Formula Formula::disjunction(Formula left, Formula right) {
    return Formula(std::make_shared<const Node>(
        Node{Kind::Or, {}, std::move(left.node_), std::move(right.node_)}));
}

bool Formula::operator==(const Formula& other) const {
    if (node_ == other.node_) return true;
    if (node_->kind != other.node_->kind) return false;
    switch (node_->kind) {
        case Kind::Var:
            return node_->name == other.node_->name;
        case Kind::Top:
        case Kind::Bottom:
            return true;
        case Kind::Not:
            return child() == other.child();
        case Kind::And:
        case Kind::Or:
            return left() == other.left() && right() == other.right();
    }
    return false;
}

namespace {

std::string describe_expected(const std::vector<std::string>& expected) {
    std::string out;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i > 0) out += i + 1 == expected.size() ? " or " : ", ";
        out += expected[i];
    }
    return out;
}

}  // namespace

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected,
                       const std::string& found)
    : Error("parse error at offset " + std::to_string(offset) +
            ": expected " + describe_expected(expected) + ", found " + found),
      offset_(offset),
      expected_(std::move(expected)) {}

namespace {

enum class TokenKind { Var, Tnot, Tand, Tor, Top, Bottom, LParen, RParen, End };

struct Token {
    TokenKind kind;
    std::string text;
    std::size_t offset;  // byte offset into the source
};

bool is_var_start(char c) {
    return c == '_' || std::isalpha(static_cast<unsigned char>(c));
}

bool is_var_char(char c) {
    return c == '_' || std::isalnum(static_cast<unsigned char>(c));
}

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> tokens;
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
                continue;
            }
            const std::size_t start = pos_;
            if (is_var_start(c)) {
                ++pos_;
                while (pos_ < text_.size() && is_var_char(text_[pos_])) ++pos_;
                tokens.push_back({TokenKind::Var,
                                  std::string(text_.substr(start, pos_ - start)),
                                  start});
                continue;
            }
            switch (c) {
                case '&': push(tokens, TokenKind::Tand, 1); continue;
                case '|': push(tokens, TokenKind::Tor, 1); continue;
                case '!':
                case '~': push(tokens, TokenKind::Tnot, 1); continue;
                case '1': push(tokens, TokenKind::Top, 1); continue;
                case '0': push(tokens, TokenKind::Bottom, 1); continue;
                case '(': push(tokens, TokenKind::LParen, 1); continue;
                case ')': push(tokens, TokenKind::RParen, 1); continue;
                default: break;
            }
            // UTF-8 connective aliases: ∧ (e2 88 a7), ∨ (e2 88 a8), ¬ (c2 ac).
            if (match("∧")) {
                push(tokens, TokenKind::Tand, 3);
                continue;
            }
            if (match("∨")) {
                push(tokens, TokenKind::Tor, 3);
                continue;
            }
            if (match("¬")) {
                push(tokens, TokenKind::Tnot, 2);
                continue;
            }
            throw ParseError(start, {"a variable", "'('", "'!'", "'1'", "'0'"},
                             "'" + describe_byte(start) + "'");
        }
        tokens.push_back({TokenKind::End, "", text_.size()});
        return tokens;
    }

private:
    void push(std::vector<Token>& tokens, TokenKind kind, std::size_t len) {
        tokens.push_back(
            {kind, std::string(text_.substr(pos_, len)), pos_});
        pos_ += len;
    }

    bool match(std::string_view s) const {
        return text_.substr(pos_, s.size()) == s;
    }

    std::string describe_byte(std::size_t at) const {
        // Print the whole UTF-8 sequence when the lead byte starts one.
        const unsigned char lead = static_cast<unsigned char>(text_[at]);
        std::size_t len = 1;
        if ((lead & 0xe0) == 0xc0) len = 2;
        else if ((lead & 0xf0) == 0xe0) len = 3;
        else if ((lead & 0xf8) == 0xf0) len = 4;
        return std::string(text_.substr(at, len));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

// expr := term ('|' term)*
// term := factor ('&' factor)*
// factor := '!' factor | atom
// atom := var | '1' | '0' | '(' expr ')'
class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    Formula run() {
        Formula f = expr();
        expect(TokenKind::End, {"'&'", "'|'", "end of input"});
        return f;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }

    Token advance() { return tokens_[pos_++]; }

    void expect(TokenKind kind, std::vector<std::string> expected) {
        if (peek().kind != kind)
            throw ParseError(peek().offset, std::move(expected),
                             describe(peek()));
        ++pos_;
    }

    static std::string describe(const Token& t) {
        if (t.kind == TokenKind::End) return "end of input";
        return "'" + t.text + "'";
    }

    Formula expr() {
        Formula f = term();
        while (peek().kind == TokenKind::Tor) {
            advance();
            f = Formula::disjunction(std::move(f), term());
        }
        return f;
    }

    Formula term() {
        Formula f = factor();
        while (peek().kind == TokenKind::Tand) {
            advance();
            f = Formula::conjunction(std::move(f), factor());
        }
        return f;
    }

    Formula factor() {
        if (peek().kind == TokenKind::Tnot) {
            advance();
            return Formula::negation(factor());
        }
        return atom();
    }

    Formula atom() {
        const Token t = peek();
        switch (t.kind) {
            case TokenKind::Var:
                advance();
                return Formula::var(t.text);
            case TokenKind::Top:
                advance();
                return Formula::top();
            case TokenKind::Bottom:
                advance();
                return Formula::bottom();
            case TokenKind::LParen: {
                advance();
                Formula f = expr();
                expect(TokenKind::RParen, {"')'"});
                return f;
            }
            default:
                throw ParseError(t.offset,
                                 {"a variable", "'('", "'!'", "'1'", "'0'"},
                                 describe(t));
        }
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

}  // namespace

Formula parse(std::string_view text) {
    return Parser(Lexer(text).run()).run();
}

namespace {

// Precedence tiers for printing: or < and < not < atom.
int print_prec(Formula::Kind kind) {
    switch (kind) {
        case Formula::Kind::Or: return 1;
        case Formula::Kind::And: return 2;
        case Formula::Kind::Not: return 3;
        default: return 4;
    }
}

void render(const Formula& f, int min_prec, std::string& out) {
    const int prec = print_prec(f.kind());
    const bool parens = prec < min_prec;
    if (parens) out += '(';
    switch (f.kind()) {
        case Formula::Kind::Var:
            out += f.var_name();
            break;
        case Formula::Kind::Top:
            out += '1';
            break;
        case Formula::Kind::Bottom:
            out += '0';
            break;
        case Formula::Kind::Not:
            out += '!';
            render(f.child(), prec, out);
            break;
        case Formula::Kind::And:
            render(f.left(), prec, out);
            out += " & ";
            render(f.right(), prec + 1, out);  // left-associative
            break;
        case Formula::Kind::Or:
            render(f.left(), prec, out);
            out += " | ";
            render(f.right(), prec + 1, out);
            break;
    }
    if (parens) out += ')';
}

void render_tree(const Formula& f, int depth, std::string& out) {
    out.append(static_cast<std::size_t>(depth) * 2, ' ');
    switch (f.kind()) {
        case Formula::Kind::Var:
            out += "var " + f.var_name() + "\n";
            break;
        case Formula::Kind::Top:
            out += "top\n";
            break;
        case Formula::Kind::Bottom:
            out += "bottom\n";
            break;
        case Formula::Kind::Not:
            out += "not\n";
            render_tree(f.child(), depth + 1, out);
            break;
        case Formula::Kind::And:
            out += "and\n";
            render_tree(f.left(), depth + 1, out);
            render_tree(f.right(), depth + 1, out);
            break;
        case Formula::Kind::Or:
            out += "or\n";
            render_tree(f.left(), depth + 1, out);
            render_tree(f.right(), depth + 1, out);
            break;
    }
}

void collect_variables(const Formula& f, std::vector<std::string>& order,
                       std::set<std::string>& seen) {
    switch (f.kind()) {
        case Formula::Kind::Var:
            if (seen.insert(f.var_name()).second) order.push_back(f.var_name());
            break;
        case Formula::Kind::Not:
            collect_variables(f.child(), order, seen);
            break;
        case Formula::Kind::And:
        case Formula::Kind::Or:
            collect_variables(f.left(), order, seen);
            collect_variables(f.right(), order, seen);
            break;
        case Formula::Kind::Top:
        case Formula::Kind::Bottom:
            break;
    }
}

}  // namespace

std::string pretty_print(const Formula& f) {
    std::string out;
    render(f, 0, out);
    return out;
}

std::string ast_to_string(const Formula& f) {
    std::string out;
    render_tree(f, 0, out);
    return out;
}

std::vector<std::string> free_variables(const Formula& f) {
    std::vector<std::string> order;
    std::set<std::string> seen;
    collect_variables(f, order, seen);
    return order;
}

UnboundVariable::UnboundVariable(const std::vector<std::string>& names)
    : Error([&] {
          std::string msg = "unbound: ";
          for (std::size_t i = 0; i < names.size(); ++i) {
              if (i > 0) msg += ", ";
              msg += names[i];
          }
          return msg;
      }()),
      names_(names) {}

}  // namespace orthomod
