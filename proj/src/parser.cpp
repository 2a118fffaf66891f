#include "ssrent/parser.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <vector>

namespace ssrent {

namespace {

struct Token {
    enum Kind {
        Number, Plus, Minus, Bar, Semi, Gt, Comma, LParen, RParen,
        Star, Slash, Sqrt, End
    };
    Kind kind = End;
    double value = 0.0;
    bool integral = false;
    int line = 1;
    int column = 1;
    std::string text;
};

const char* token_name(Token::Kind k) {
    switch (k) {
        case Token::Number: return "number";
        case Token::Plus: return "'+'";
        case Token::Minus: return "'-'";
        case Token::Bar: return "'|'";
        case Token::Semi: return "';'";
        case Token::Gt: return "'>'";
        case Token::Comma: return "','";
        case Token::LParen: return "'('";
        case Token::RParen: return "')'";
        case Token::Star: return "'*'";
        case Token::Slash: return "'/'";
        case Token::Sqrt: return "'sqrt'";
        case Token::End: return "end of input";
    }
    return "?";
}

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_space();
            Token t;
            t.line = line_;
            t.column = column_;
            if (pos_ >= text_.size()) {
                t.kind = Token::End;
                out.push_back(t);
                return out;
            }
            const char c = text_[pos_];
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
                lex_number(t);
            } else if (std::isalpha(static_cast<unsigned char>(c))) {
                lex_word(t);
            } else {
                switch (c) {
                    case '+': t.kind = Token::Plus; break;
                    case '-': t.kind = Token::Minus; break;
                    case '|': t.kind = Token::Bar; break;
                    case ';': t.kind = Token::Semi; break;
                    case '>': t.kind = Token::Gt; break;
                    case ',': t.kind = Token::Comma; break;
                    case '(': t.kind = Token::LParen; break;
                    case ')': t.kind = Token::RParen; break;
                    case '*': t.kind = Token::Star; break;
                    case '/': t.kind = Token::Slash; break;
                    default:
                        throw ParseError(std::string("unexpected character '") +
                                             c + "'",
                                         line_, column_);
                }
                t.text = c;
                advance();
            }
            out.push_back(std::move(t));
        }
    }

private:
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    void skip_space() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            advance();
        }
    }

    void lex_number(Token& t) {
        const std::size_t start = pos_;
        bool integral = true;
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            advance();
        }
        if (pos_ < text_.size() && text_[pos_] == '.') {
            integral = false;
            advance();
            while (pos_ < text_.size() &&
                   std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                advance();
            }
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t look = pos_ + 1;
            if (look < text_.size() &&
                (text_[look] == '+' || text_[look] == '-')) {
                ++look;
            }
            if (look < text_.size() &&
                std::isdigit(static_cast<unsigned char>(text_[look]))) {
                integral = false;
                while (pos_ < look) advance();
                while (pos_ < text_.size() &&
                       std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                    advance();
                }
            }
        }
        t.kind = Token::Number;
        t.text = text_.substr(start, pos_ - start);
        if (t.text == ".") {
            throw ParseError("malformed number", t.line, t.column);
        }
        t.value = std::strtod(t.text.c_str(), nullptr);
        t.integral = integral;
    }

    void lex_word(Token& t) {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
            advance();
        }
        t.text = text_.substr(start, pos_ - start);
        if (t.text == "x") {
            t.kind = Token::Star;
        } else if (t.text == "sqrt") {
            t.kind = Token::Sqrt;
        } else {
            throw ParseError("unexpected word '" + t.text + "'", t.line,
                             t.column);
        }
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    PureState run() {
        PureState state = parse_expr();
        expect(Token::End);
        return state;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }

    const Token& take() { return tokens_[pos_++]; }

    bool accept(Token::Kind kind) {
        if (peek().kind != kind) return false;
        ++pos_;
        return true;
    }

    const Token& expect(Token::Kind kind) {
        if (peek().kind != kind) {
            throw ParseError(std::string("expected ") + token_name(kind) +
                                 ", found " + token_name(peek().kind),
                             peek().line, peek().column);
        }
        return tokens_[pos_++];
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, peek().line, peek().column);
    }

    PureState parse_expr() {
        double sign = 1.0;
        if (accept(Token::Minus)) {
            sign = -1.0;
        } else {
            accept(Token::Plus);
        }
        PureState sum = parse_term().scaled(sign);
        while (peek().kind == Token::Plus || peek().kind == Token::Minus) {
            const Token& op = take();
            const PureState term = parse_term();
            if (!(term.layout() == sum.layout())) {
                throw ParseError("mode counts differ between terms", op.line,
                                 op.column);
            }
            sum = add(sum, op.kind == Token::Minus ? term.scaled(-1.0) : term);
        }
        return sum;
    }

    PureState parse_term() {
        double scalar = 1.0;
        if (peek().kind == Token::Number) scalar = parse_scalar();
        PureState state = parse_factor();
        while (accept(Token::Star)) {
            state = tensor(state, parse_factor());
        }
        return state.scaled(scalar);
    }

    double parse_scalar() {
        double value = expect(Token::Number).value;
        while (accept(Token::Slash)) {
            if (accept(Token::Sqrt)) {
                const Token& radicand = expect(Token::Number);
                if (!radicand.integral || radicand.value <= 0.0) {
                    throw ParseError("sqrt needs a positive integer",
                                     radicand.line, radicand.column);
                }
                value /= std::sqrt(radicand.value);
            } else {
                const Token& denom = expect(Token::Number);
                if (denom.value == 0.0) {
                    throw ParseError("division by zero", denom.line,
                                     denom.column);
                }
                value /= denom.value;
            }
        }
        return value;
    }

    PureState parse_factor() {
        if (accept(Token::LParen)) {
            PureState inner = parse_expr();
            expect(Token::RParen);
            return inner;
        }
        if (peek().kind != Token::Bar) {
            fail(std::string("expected '|' or '(', found ") +
                 token_name(peek().kind));
        }
        return parse_ket();
    }

    PureState parse_ket() {
        expect(Token::Bar);
        const Occ alice = parse_occ_list();
        expect(Token::Semi);
        const Occ bob = parse_occ_list();
        expect(Token::Gt);
        const ModeLayout layout{static_cast<int>(alice.size()),
                                static_cast<int>(bob.size())};
        return PureState(layout, {{BasisLabel{alice, bob}, cplx{1.0, 0.0}}});
    }

    Occ parse_occ_list() {
        Occ occ;
        do {
            const Token& t = expect(Token::Number);
            if (!t.integral || t.value < 0.0) {
                throw ParseError("occupation must be a non-negative integer",
                                 t.line, t.column);
            }
            occ.push_back(static_cast<int>(t.value));
        } while (accept(Token::Comma));
        return occ;
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

std::string format12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

} // namespace

ParsedState parse_state(const std::string& text) {
    Lexer lexer(text);
    Parser parser(lexer.run());
    const PureState raw = parser.run();
    if (raw.is_zero()) {
        throw ParseError("expression cancels to the zero state", 1, 1);
    }
    const double norm = raw.norm();
    return {raw.normalize(), norm};
}

std::string render_state(const PureState& psi) {
    if (psi.is_zero()) throw EmptyStateError("cannot render the zero state");

    // global phase: first amplitude made positive real
    const cplx lead = psi.amps().begin()->second;
    const cplx phase = std::conj(lead) / std::abs(lead);

    std::string out;
    for (const auto& [label, raw_amp] : psi.amps()) {
        const cplx amp = raw_amp * phase;
        if (std::abs(amp.imag()) > kDropTol * 10.0 + kDropTol * std::abs(amp)) {
            throw DomainError(
                "state has complex relative amplitudes; no text form exists");
        }
        const double coeff = amp.real();
        if (out.empty()) {
            if (coeff < 0.0) out += "- ";
        } else {
            out += coeff < 0.0 ? " - " : " + ";
        }
        out += format12(std::abs(coeff));
        out += " |";
        for (std::size_t i = 0; i < label.alice.size(); ++i) {
            if (i > 0) out += ",";
            out += std::to_string(label.alice[i]);
        }
        out += ";";
        for (std::size_t i = 0; i < label.bob.size(); ++i) {
            if (i > 0) out += ",";
            out += std::to_string(label.bob[i]);
        }
        out += ">";
    }
    return out;
}

} // namespace ssrent
