#include "nashcert/dsl.hpp"

#include <cctype>
#include <sstream>

#include "nashcert/error.hpp"

namespace nashcert {

namespace {

enum class Tok { ident, number, plus, minus, star, caret, lparen, rparen, comma, semi, colon, slash, end };

struct Token {
    Tok kind;
    std::string text;
    int line, col;
};

class Lexer {
public:
    Lexer(const std::string& text, std::string filename)
        : text_(text), file_(std::move(filename)) {
        advance();
    }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

    [[noreturn]] void error(const std::string& msg, const Token& at) const {
        std::ostringstream os;
        os << file_ << ":" << at.line << ":" << at.col << ": syntax error: " << msg;
        throw NashError(ErrorKind::parse, os.str());
    }

    [[noreturn]] void error_here(const std::string& msg) const { error(msg, tok_); }

    const std::string& file() const { return file_; }

private:
    void advance() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else if (c == '\n') {
                ++pos_;
                ++line_;
                col_ = 1;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
                ++col_;
            } else {
                break;
            }
        }
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= text_.size()) {
            tok_ = {Tok::end, "", line_, col_};
            return;
        }
        char c = text_[pos_];
        auto single = [&](Tok k) {
            tok_ = {k, std::string(1, c), line_, col_};
            ++pos_;
            ++col_;
        };
        switch (c) {
            case '+': single(Tok::plus); return;
            case '-': single(Tok::minus); return;
            case '*': single(Tok::star); return;
            case '^': single(Tok::caret); return;
            case '(': single(Tok::lparen); return;
            case ')': single(Tok::rparen); return;
            case ',': single(Tok::comma); return;
            case ';': single(Tok::semi); return;
            case ':': single(Tok::colon); return;
            case '/': single(Tok::slash); return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            tok_ = {Tok::number, text_.substr(start, pos_ - start), line_, col_};
            col_ += static_cast<int>(pos_ - start);
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            tok_ = {Tok::ident, text_.substr(start, pos_ - start), line_, col_};
            col_ += static_cast<int>(pos_ - start);
            return;
        }
        tok_ = {Tok::end, std::string(1, c), line_, col_};
        error_here(std::string("unexpected character '") + c + "'");
    }

    const std::string& text_;
    std::string file_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_{Tok::end, "", 1, 1};
};

long long parse_ll(Lexer& lex) {
    Token t = lex.take();
    if (t.kind != Tok::number) lex.error("expected an integer", t);
    try {
        return std::stoll(t.text);
    } catch (...) {
        lex.error("integer literal out of range", t);
    }
}

long long parse_signed_ll(Lexer& lex) {
    bool neg = false;
    if (lex.peek().kind == Tok::minus) {
        lex.take();
        neg = true;
    }
    long long v = parse_ll(lex);
    return neg ? -v : v;
}

// NUMBER := INT ['/' INT]
Rat parse_number(Lexer& lex) {
    long long n = parse_ll(lex);
    if (lex.peek().kind == Tok::slash) {
        lex.take();
        long long d = parse_ll(lex);
        if (d == 0) lex.error_here("zero denominator");
        return Rat(n) / Rat(d);
    }
    return Rat(n);
}

Rat parse_signed_number(Lexer& lex) {
    bool neg = false;
    if (lex.peek().kind == Tok::minus) {
        lex.take();
        neg = true;
    }
    Rat v = parse_number(lex);
    return neg ? Rat(-v) : v;
}

SparsePoly parse_expr(Lexer& lex);

SparsePoly parse_base(Lexer& lex) {
    Token t = lex.peek();
    if (t.kind == Tok::number) return SparsePoly::constant(parse_number(lex));
    if (t.kind == Tok::ident) {
        lex.take();
        if (t.text.size() == 1) {
            int v = var_index(t.text[0]);
            if (v >= 0) return SparsePoly::variable(v);
        }
        lex.error("unknown identifier '" + t.text + "' (variables are x, y, z, u)", t);
    }
    if (t.kind == Tok::lparen) {
        lex.take();
        SparsePoly p = parse_expr(lex);
        if (lex.peek().kind != Tok::rparen) lex.error_here("expected ')'");
        lex.take();
        return p;
    }
    lex.error("expected a number, variable, or '('", t);
}

SparsePoly parse_factor(Lexer& lex) {
    SparsePoly base = parse_base(lex);
    if (lex.peek().kind == Tok::caret) {
        lex.take();
        Token t = lex.peek();
        if (t.kind != Tok::number) lex.error("expected a non-negative integer exponent", t);
        long long e = parse_ll(lex);
        if (e > 512) lex.error("exponent too large", t);
        return poly_pow(base, static_cast<int>(e));
    }
    return base;
}

SparsePoly parse_term(Lexer& lex) {
    SparsePoly p = parse_factor(lex);
    while (lex.peek().kind == Tok::star) {
        lex.take();
        p = poly_mul(p, parse_factor(lex));
    }
    return p;
}

SparsePoly parse_expr(Lexer& lex) {
    bool neg = false;
    if (lex.peek().kind == Tok::minus) {
        lex.take();
        neg = true;
    } else if (lex.peek().kind == Tok::plus) {
        lex.take();
    }
    SparsePoly p = parse_term(lex);
    if (neg) p = poly_scale(p, Rat(-1));
    for (;;) {
        Tok k = lex.peek().kind;
        if (k == Tok::plus) {
            lex.take();
            p = poly_add(p, parse_term(lex));
        } else if (k == Tok::minus) {
            lex.take();
            p = poly_sub(p, parse_term(lex));
        } else {
            return p;
        }
    }
}

// 1/m (w1,w2,w3,w4) -- shared shape of action and weight clauses.
struct FractionVector {
    long long m;
    std::vector<long long> entries;
};

FractionVector parse_fraction_vector(Lexer& lex, size_t want_entries) {
    FractionVector fv;
    Token t = lex.peek();
    long long one = parse_ll(lex);
    if (one != 1) lex.error("expected the form 1/m (...)", t);
    if (lex.peek().kind != Tok::slash) lex.error_here("expected '/'");
    lex.take();
    fv.m = parse_ll(lex);
    if (fv.m < 1) lex.error_here("modulus must be positive");
    if (lex.peek().kind != Tok::lparen) lex.error_here("expected '('");
    lex.take();
    for (;;) {
        fv.entries.push_back(parse_signed_ll(lex));
        if (lex.peek().kind == Tok::comma) {
            lex.take();
            continue;
        }
        break;
    }
    if (lex.peek().kind != Tok::rparen) lex.error_here("expected ')'");
    lex.take();
    if (want_entries && fv.entries.size() != want_entries)
        lex.error_here("expected " + std::to_string(want_entries) + " entries");
    return fv;
}

}  // namespace

bool SingularityFile::operator==(const SingularityFile& o) const {
    bool w_eq = weight.has_value() == o.weight.has_value() &&
                (!weight || (*weight == *o.weight));
    return name == o.name && equation == o.equation && action == o.action && w_eq &&
           commands == o.commands;
}

SingularityFile parse_singularity(const std::string& text, const std::string& filename) {
    Lexer lex(text, filename);
    SingularityFile out;
    bool saw_equation = false, saw_action = false;
    while (lex.peek().kind != Tok::end) {
        Token key = lex.take();
        if (key.kind != Tok::ident) lex.error("expected a clause name", key);
        if (lex.peek().kind != Tok::colon) lex.error_here("expected ':'");
        lex.take();
        if (key.text == "name") {
            Token t = lex.take();
            if (t.kind != Tok::ident) lex.error("expected an identifier", t);
            out.name = t.text;
        } else if (key.text == "equation") {
            out.equation = parse_expr(lex);
            saw_equation = true;
        } else if (key.text == "action") {
            FractionVector fv = parse_fraction_vector(lex, kNumVars);
            out.action = GroupAction(fv.m, {fv.entries[0], fv.entries[1], fv.entries[2],
                                            fv.entries[3]})
                             .normalized();
            saw_action = true;
        } else if (key.text == "weight") {
            FractionVector fv = parse_fraction_vector(lex, kNumVars);
            WeightSigma w;
            w.m = fv.m;
            w.abcd = {fv.entries[0], fv.entries[1], fv.entries[2], fv.entries[3]};
            out.weight = w;
        } else if (key.text == "commands") {
            for (;;) {
                Token t = lex.take();
                if (t.kind != Tok::ident) lex.error("expected a command name", t);
                out.commands.push_back(t.text);
                if (lex.peek().kind == Tok::comma) {
                    lex.take();
                    continue;
                }
                break;
            }
        } else {
            lex.error("unknown clause '" + key.text + "'", key);
        }
        if (lex.peek().kind != Tok::semi) lex.error_here("expected ';'");
        lex.take();
    }
    if (!saw_equation)
        throw NashError(ErrorKind::parse, filename + ": missing 'equation' clause");
    if (!saw_action)
        throw NashError(ErrorKind::parse, filename + ": missing 'action' clause");
    if (!out.equation.integral())
        throw NashError(ErrorKind::parse, filename + ": equation has fractional exponents");
    // Semantic validation: the equation must define a hyperquotient.
    try {
        (void)Hyperquotient(out.equation, out.action);
    } catch (const NashError& e) {
        throw NashError(e.kind(), filename + ": " + e.what());
    }
    return out;
}

std::string print_singularity(const SingularityFile& s) {
    std::ostringstream os;
    if (!s.name.empty()) os << "name: " << s.name << ";\n";
    os << "equation: " << s.equation.str() << ";\n";
    GroupAction a = s.action.normalized();
    os << "action: 1/" << a.m << " (" << a.weights[0] << "," << a.weights[1] << ","
       << a.weights[2] << "," << a.weights[3] << ");\n";
    if (s.weight)
        os << "weight: 1/" << s.weight->m << " (" << s.weight->abcd[0] << ","
           << s.weight->abcd[1] << "," << s.weight->abcd[2] << "," << s.weight->abcd[3]
           << ");\n";
    if (!s.commands.empty()) {
        os << "commands: ";
        for (size_t i = 0; i < s.commands.size(); ++i) os << (i ? "," : "") << s.commands[i];
        os << ";\n";
    }
    return os.str();
}

Hyperquotient to_hyperquotient(const SingularityFile& s) {
    return Hyperquotient(s.equation, s.action);
}

SparsePoly parse_polynomial(const std::string& text) {
    Lexer lex(text, "<expression>");
    SparsePoly p = parse_expr(lex);
    if (lex.peek().kind != Tok::end) lex.error_here("trailing input after expression");
    return p;
}

WeightSigma parse_weight(const std::string& text) {
    Lexer lex(text, "<weight>");
    FractionVector fv = parse_fraction_vector(lex, kNumVars);
    if (lex.peek().kind != Tok::end) lex.error_here("trailing input after weight");
    WeightSigma w;
    w.m = fv.m;
    w.abcd = {fv.entries[0], fv.entries[1], fv.entries[2], fv.entries[3]};
    return w;
}

QuotientLattice parse_lattice(const std::string& text) {
    Lexer lex(text, "<lattice>");
    FractionVector fv = parse_fraction_vector(lex, 0);
    if (lex.peek().kind != Tok::end) lex.error_here("trailing input after lattice");
    return QuotientLattice(static_cast<int>(fv.entries.size()), fv.m, fv.entries);
}

std::vector<std::vector<Rat>> parse_cone_generators(const std::string& text, int rank) {
    if (text == "std") {
        std::vector<std::vector<Rat>> gens(rank, std::vector<Rat>(rank, Rat(0)));
        for (int i = 0; i < rank; ++i) gens[i][i] = 1;
        return gens;
    }
    Lexer lex(text, "<cone>");
    std::vector<std::vector<Rat>> gens;
    for (;;) {
        if (lex.peek().kind != Tok::lparen) lex.error_here("expected '(' starting a generator");
        lex.take();
        std::vector<Rat> g;
        for (;;) {
            g.push_back(parse_signed_number(lex));
            if (lex.peek().kind == Tok::comma) {
                lex.take();
                continue;
            }
            break;
        }
        if (lex.peek().kind != Tok::rparen) lex.error_here("expected ')'");
        lex.take();
        if (static_cast<int>(g.size()) != rank)
            lex.error_here("generator has " + std::to_string(g.size()) + " entries, expected " +
                           std::to_string(rank));
        gens.push_back(std::move(g));
        if (lex.peek().kind == Tok::semi) {
            lex.take();
            continue;
        }
        if (lex.peek().kind == Tok::end) break;
        lex.error_here("expected ';' between generators");
    }
    return gens;
}

}  // namespace nashcert
