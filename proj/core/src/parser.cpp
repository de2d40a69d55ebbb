#include "elp/parser.hpp"

#include <cctype>
#include <optional>
#include <vector>

namespace elp {

ParseError::ParseError(SourceSpan where, const std::string& message)
    : Error(std::to_string(where.line) + ":" + std::to_string(where.column) + ": " + message),
      where_(where),
      detail_(message) {}

namespace {

enum class Tok { ident, variable, number, lparen, rparen, comma, dot, bar, if_, minus, end };

struct Token {
    Tok kind;
    std::string text;
    SourceSpan at;
};

bool ident_start(char c) { return std::islower(static_cast<unsigned char>(c)) != 0; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    Token next() {
        skip_blank();
        SourceSpan at{line_, col_};
        if (pos_ >= text_.size()) {
            return {Tok::end, "", at};
        }
        char c = text_[pos_];
        auto single = [&](Tok k) {
            advance();
            return Token{k, std::string(1, c), at};
        };
        switch (c) {
            case '(': return single(Tok::lparen);
            case ')': return single(Tok::rparen);
            case ',': return single(Tok::comma);
            case '.': return single(Tok::dot);
            case '|': return single(Tok::bar);
            case '-': return single(Tok::minus);
            case ':':
                if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '-') {
                    advance();
                    advance();
                    return {Tok::if_, ":-", at};
                }
                throw ParseError(at, "expected ':-'");
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string s;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                s += text_[pos_];
                advance();
            }
            return {Tok::number, s, at};
        }
        if (ident_start(c) || std::isupper(static_cast<unsigned char>(c)) || c == '_') {
            std::string s;
            while (pos_ < text_.size() && ident_char(text_[pos_])) {
                s += text_[pos_];
                advance();
            }
            return {ident_start(c) ? Tok::ident : Tok::variable, s, at};
        }
        throw ParseError(at, std::string("unexpected character '") + c + "'");
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

    void skip_blank() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '%') {
                while (pos_ < text_.size() && text_[pos_] != '\n') {
                    advance();
                }
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class Parser {
public:
    Parser(std::string_view text, ParseOptions options) : lex_(text), options_(options) { shift(); }

    Program program() {
        Program p;
        while (cur_.kind != Tok::end) {
            p.rules.push_back(rule());
        }
        return p;
    }

private:
    void shift() { cur_ = lex_.next(); }

    bool is_keyword(const char* kw) const { return cur_.kind == Tok::ident && cur_.text == kw; }

    bool is_modality() const { return cur_.kind == Tok::variable && (cur_.text == "K" || cur_.text == "M"); }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(cur_.at, msg); }

    void expect(Tok k, const char* what) {
        if (cur_.kind != k) {
            fail(std::string("expected ") + what);
        }
        shift();
    }

    Rule rule() {
        std::vector<Literal> head;
        std::vector<BodyElement> body;
        if (cur_.kind != Tok::if_) {
            head.push_back(literal());
            while (cur_.kind == Tok::bar || is_keyword("or")) {
                shift();
                head.push_back(literal());
            }
        }
        if (cur_.kind == Tok::if_) {
            shift();
            // `h :- .` and `:- .` (empty body) are accepted; reducts produce them.
            if (cur_.kind == Tok::dot) {
                shift();
                return Rule(std::move(head), std::move(body));
            }
            body.push_back(element());
            while (cur_.kind == Tok::comma) {
                shift();
                body.push_back(element());
            }
        } else if (head.empty()) {
            fail("empty rule");
        }
        expect(Tok::dot, "'.' at end of rule");
        return Rule(std::move(head), std::move(body));
    }

    BodyElement element() {
        int negs = 0;
        SourceSpan second_not{};
        while (is_keyword("not")) {
            if (negs == 1) {
                second_not = cur_.at;
            }
            if (negs == 2) {
                fail("at most two default negations are allowed");
            }
            ++negs;
            shift();
        }
        if (is_modality()) {
            SourceSpan at = cur_.at;
            Modality m = cur_.text == "K" ? Modality::K : Modality::M;
            if (options_.asp_only) {
                throw ParseError(at, "subjective literal in ASP program");
            }
            if (negs == 2) {
                throw ParseError(second_not, "not not before subjective literal");
            }
            shift();
            return BodyElement::subjective(m, literal(), negs);
        }
        if (negs == 2 && !options_.allow_double_negation) {
            throw ParseError(second_not, "nested default negation is only allowed in ASP programs");
        }
        return BodyElement::objective(literal(), negs);
    }

    Literal literal() {
        bool neg = false;
        if (cur_.kind == Tok::minus) {
            neg = true;
            shift();
        }
        if (cur_.kind == Tok::variable) {
            if (cur_.text == "K" || cur_.text == "M") {
                fail("modal operator '" + cur_.text + "' is not allowed here");
            }
            fail("variable in ground program: " + cur_.text);
        }
        if (cur_.kind != Tok::ident) {
            fail("expected literal");
        }
        if (cur_.text == "not" || cur_.text == "or") {
            fail("keyword '" + cur_.text + "' used as atom name");
        }
        if (cur_.text == "k" || cur_.text == "m") {
            fail("atom name '" + cur_.text + "' is reserved");
        }
        Atom a{cur_.text, {}};
        shift();
        if (cur_.kind == Tok::lparen) {
            shift();
            a.args.push_back(constant());
            while (cur_.kind == Tok::comma) {
                shift();
                a.args.push_back(constant());
            }
            expect(Tok::rparen, "')'");
        }
        return Literal{std::move(a), neg};
    }

    std::string constant() {
        if (cur_.kind == Tok::variable) {
            fail("variable in ground program: " + cur_.text);
        }
        if (cur_.kind != Tok::ident && cur_.kind != Tok::number) {
            fail("expected constant");
        }
        std::string s = cur_.text;
        shift();
        return s;
    }

    Lexer lex_;
    ParseOptions options_;
    Token cur_{Tok::end, "", {}};
};

std::string element_text(const BodyElement& e) {
    std::string out;
    for (int i = 0; i < e.neg_depth; ++i) {
        out += "not ";
    }
    if (e.modality) {
        out += *e.modality == Modality::K ? "K " : "M ";
    }
    return out + to_string(e.literal);
}

} // namespace

Program parse_elp(std::string_view text, ParseOptions options) { return Parser(text, options).program(); }

Program parse_asp(std::string_view text) {
    return parse_elp(text, ParseOptions{.allow_double_negation = true, .asp_only = true});
}

std::string to_string(const Rule& rule) {
    std::string out;
    for (std::size_t i = 0; i < rule.head.size(); ++i) {
        if (i) {
            out += " | ";
        }
        out += to_string(rule.head[i]);
    }
    if (rule.head.empty() && rule.body.empty()) {
        return ":- .";
    }
    if (!rule.body.empty()) {
        out += rule.head.empty() ? ":- " : " :- ";
        for (std::size_t i = 0; i < rule.body.size(); ++i) {
            if (i) {
                out += ", ";
            }
            out += element_text(rule.body[i]);
        }
    }
    return out + ".";
}

std::string emit_elp(const Program& program) {
    std::string out;
    for (const auto& r : program.rules) {
        out += to_string(r);
        out += '\n';
    }
    return out;
}

std::string emit_asp(const Program& program) {
    if (!program.is_asp()) {
        throw ContractError("emit_asp: program contains subjective literals");
    }
    return emit_elp(program);
}

} // namespace elp
