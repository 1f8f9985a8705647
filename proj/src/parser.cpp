#include "sullivan/parser.hpp"

#include <algorithm>
#include <sstream>

namespace sullivan {

namespace {

struct Token {
    enum Kind { Number, Id, Plus, Minus, Star, Caret, Slash, Equals, End } kind;
    std::string text;
};

class Lexer {
  public:
    explicit Lexer(const std::string& s) : s_(s) {}

    Token next() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ >= s_.size()) return {Token::End, ""};
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return {Token::Number, s_.substr(start, pos_ - start)};
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            return {Token::Id, s_.substr(start, pos_ - start)};
        }
        ++pos_;
        switch (c) {
            case '+': return {Token::Plus, "+"};
            case '-': return {Token::Minus, "-"};
            case '*': return {Token::Star, "*"};
            case '^': return {Token::Caret, "^"};
            case '/': return {Token::Slash, "/"};
            case '=': return {Token::Equals, "="};
            default: return {Token::End, std::string(1, c)};  // caller reports
        }
    }

    Token peek() {
        size_t save = pos_;
        Token t = next();
        pos_ = save;
        return t;
    }

  private:
    const std::string& s_;
    size_t pos_ = 0;
};

struct LineParser {
    const GeneratorSet* universe = nullptr;
    GenSetPtr universe_ptr;
    std::vector<ParseError>* errors;
    int line_no = 0;

    void error(const std::string& msg) { errors->push_back({line_no, msg}); }

    // one additive term: [rat] [* g1^e1 * ...]; interval atoms t / dt allowed
    // when t_power / has_dt are provided
    bool parse_term(Lexer& lex, Rat& coeff, std::vector<uint32_t>& factors, int* t_power,
                    int* dt_count) {
        bool any = false;
        bool expect_atom = true;
        while (true) {
            Token t = lex.peek();
            if (t.kind == Token::End || t.kind == Token::Plus || t.kind == Token::Minus) break;
            t = lex.next();
            if (!expect_atom) {
                if (t.kind != Token::Star) {
                    error("expected '*' between factors");
                    return false;
                }
                t = lex.next();
            }
            expect_atom = false;
            if (t.kind == Token::Number) {
                mpz_class num(t.text);
                mpz_class den(1);
                if (lex.peek().kind == Token::Slash) {
                    lex.next();
                    Token d = lex.next();
                    if (d.kind != Token::Number) {
                        error("expected denominator after '/'");
                        return false;
                    }
                    den = mpz_class(d.text);
                    if (den == 0) {
                        error("zero denominator");
                        return false;
                    }
                }
                Rat q(num, den);
                q.canonicalize();
                coeff *= q;
                any = true;
                continue;
            }
            if (t.kind != Token::Id) {
                error("unexpected token '" + t.text + "' in expression");
                return false;
            }
            long exponent = 1;
            if (lex.peek().kind == Token::Caret) {
                lex.next();
                Token e = lex.next();
                if (e.kind != Token::Number) {
                    error("expected integer exponent after '^'");
                    return false;
                }
                exponent = std::stol(e.text);
                if (exponent < 0) {
                    error("negative exponent");
                    return false;
                }
            }
            any = true;
            if (t.text == "t" && t_power) {
                *t_power += static_cast<int>(exponent);
                continue;
            }
            if (t.text == "dt" && dt_count) {
                *dt_count += static_cast<int>(exponent);
                continue;
            }
            auto idx = universe->index_of(t.text);
            if (!idx) {
                error("unknown generator '" + t.text + "'");
                return false;
            }
            for (long i = 0; i < exponent; ++i) factors.push_back(*idx);
        }
        if (!any) {
            error("empty term");
            return false;
        }
        return true;
    }

    // full +/- separated expression; nullopt on error
    std::optional<Element> parse_element(const std::string& text) {
        IntervalElement dummy;
        auto iv = parse_interval(text, false);
        if (!iv) return std::nullopt;
        return iv->restrict_at_0();  // no t/dt atoms were allowed, so exact
    }

    std::optional<IntervalElement> parse_interval(const std::string& text, bool allow_t) {
        Lexer lex(text);
        IntervalElement out(universe_ptr);
        bool first = true;
        while (true) {
            Token t = lex.peek();
            if (t.kind == Token::End) break;
            int sign = 1;
            if (t.kind == Token::Plus || t.kind == Token::Minus) {
                lex.next();
                sign = t.kind == Token::Minus ? -1 : 1;
            } else if (!first) {
                error("expected '+' or '-' between terms");
                return std::nullopt;
            }
            first = false;
            Rat coeff(sign);
            std::vector<uint32_t> factors;
            int t_power = 0, dt_count = 0;
            if (!parse_term(lex, coeff, factors, allow_t ? &t_power : nullptr,
                            allow_t ? &dt_count : nullptr))
                return std::nullopt;
            if (dt_count > 1) continue;  // dt^2 = 0
            Element base = Element::monomial(universe_ptr, std::move(factors), coeff);
            out += dt_count == 1 ? IntervalElement::dt(base, t_power)
                                 : IntervalElement::poly(base, t_power);
        }
        return out;
    }
};

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string current;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(current);
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    lines.push_back(current);
    return lines;
}

std::string strip(const std::string& s) {
    std::string t = s.substr(0, s.find('#'));
    size_t a = t.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = t.find_last_not_of(" \t\r");
    return t.substr(a, b - a + 1);
}

std::vector<std::string> words(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    std::string w;
    while (is >> w) out.push_back(w);
    return out;
}

ParseResult parse_recipe(const std::vector<std::pair<int, std::string>>& lines) {
    std::vector<ParseError> errors;
    auto ws = words(lines[0].second);
    SamplerOptions opt;
    std::string name = "sampled";
    uint64_t seed = 1;
    size_t i = 1;
    if (ws.size() >= 2) name = ws[1];
    for (i = 2; i + 1 <= ws.size(); ++i) {
        const std::string& key = ws[i];
        auto need_value = [&](long& out_value) {
            if (i + 1 >= ws.size()) {
                errors.push_back({lines[0].first, "missing value after '" + key + "'"});
                return false;
            }
            out_value = std::stol(ws[++i]);
            return true;
        };
        long v = 0;
        if (key == "maxdeg") {
            if (need_value(v)) opt.max_degree = static_cast<int>(v);
        } else if (key == "seed") {
            if (need_value(v)) seed = static_cast<uint64_t>(v);
        } else if (key == "maxgens") {
            if (need_value(v)) opt.max_gens_per_degree = static_cast<int>(v);
        } else if (key == "closedpct") {
            if (need_value(v)) opt.closed_percent = static_cast<int>(v);
        } else if (key == "coformal") {
            opt.coformal_only = true;
        } else if (key == "simple") {
            opt.simple_only = true;
        } else if (key == "simplyconnected") {
            opt.simply_connected = true;
        } else {
            errors.push_back({lines[0].first, "unknown recipe option '" + key + "'"});
        }
    }
    if (lines.size() > 1)
        errors.push_back({lines[1].first, "recipe files are a single 'sample' line"});
    if (!errors.empty()) return errors;
    Rng rng(seed);
    ModelFile out;
    out.model = sample_model(rng, opt, name);
    out.from_recipe = true;
    return out;
}

}  // namespace

ParseResult parse_model(const std::string& text) {
    std::vector<ParseError> errors;
    std::vector<std::pair<int, std::string>> lines;  // (line number, stripped)
    {
        auto raw = split_lines(text);
        for (size_t i = 0; i < raw.size(); ++i) {
            std::string s = strip(raw[i]);
            if (!s.empty()) lines.emplace_back(static_cast<int>(i) + 1, s);
        }
    }
    if (lines.empty()) return std::vector<ParseError>{{1, "empty model file"}};

    if (words(lines[0].second)[0] == "sample") return parse_recipe(lines);

    // header
    std::string name;
    int maxdeg = 0;
    {
        auto ws = words(lines[0].second);
        if (ws.size() != 4 || ws[0] != "model" || ws[2] != "maxdeg") {
            errors.push_back({lines[0].first, "expected 'model <name> maxdeg <N>'"});
            return errors;
        }
        name = ws[1];
        try {
            maxdeg = std::stoi(ws[3]);
        } catch (...) {
            errors.push_back({lines[0].first, "maxdeg is not an integer"});
            return errors;
        }
        if (maxdeg < 1) errors.push_back({lines[0].first, "maxdeg must be >= 1"});
    }

    // pass 1: generators
    std::vector<Generator> gens;
    std::vector<std::string> seen;
    for (size_t i = 1; i < lines.size(); ++i) {
        auto ws = words(lines[i].second);
        if (ws[0] != "gen") continue;
        if (ws.size() != 4 && ws.size() != 6) {
            errors.push_back({lines[i].first, "expected 'gen <id> deg <n> [step <J>]'"});
            continue;
        }
        if (ws[2] != "deg" || (ws.size() == 6 && ws[4] != "step")) {
            errors.push_back({lines[i].first, "expected 'gen <id> deg <n> [step <J>]'"});
            continue;
        }
        Generator g;
        g.name = ws[1];
        if (g.name == "t" || g.name == "dt") {
            errors.push_back({lines[i].first, "generator id '" + g.name + "' is reserved"});
            continue;
        }
        try {
            g.degree = std::stoi(ws[3]);
            if (ws.size() == 6) g.declared_step = std::stoi(ws[5]);
        } catch (...) {
            errors.push_back({lines[i].first, "malformed integer in gen line"});
            continue;
        }
        if (g.degree < 1) {
            errors.push_back({lines[i].first, "generator degree must be >= 1"});
            continue;
        }
        if (g.degree > maxdeg) {
            errors.push_back({lines[i].first, "generator degree exceeds maxdeg"});
            continue;
        }
        if (std::find(seen.begin(), seen.end(), g.name) != seen.end()) {
            errors.push_back({lines[i].first, "duplicate generator id '" + g.name + "'"});
            continue;
        }
        seen.push_back(g.name);
        gens.push_back(std::move(g));
    }
    if (!errors.empty()) return errors;

    GenSetPtr universe;
    try {
        universe = std::make_shared<GeneratorSet>(gens, maxdeg);
    } catch (const std::exception& e) {
        errors.push_back({lines[0].first, e.what()});
        return errors;
    }

    // pass 2: differentials and blocks
    LineParser lp;
    lp.universe = universe.get();
    lp.universe_ptr = universe;
    lp.errors = &errors;

    std::vector<Element> images(universe->size(), Element::zero(universe));
    std::vector<bool> assigned(universe->size(), false);
    ModelFile out;
    enum class Block { None, Morphism, Homotopy };
    Block block = Block::None;

    for (size_t i = 1; i < lines.size(); ++i) {
        lp.line_no = lines[i].first;
        auto ws = words(lines[i].second);
        const std::string& kind = ws[0];
        if (kind == "gen") continue;
        if (kind == "model") {
            lp.error("only one model per file");
            continue;
        }
        if (kind == "morphism") {
            if (ws.size() != 2) {
                lp.error("expected 'morphism <name>'");
                continue;
            }
            block = Block::Morphism;
            out.morphisms.push_back(
                {ws[1], std::vector<Element>(universe->size(), Element::zero(universe))});
            continue;
        }
        if (kind == "homotopy") {
            if (ws.size() != 6 || ws[2] != "from" || ws[4] != "to") {
                lp.error("expected 'homotopy <name> from <phi> to <psi>'");
                continue;
            }
            block = Block::Homotopy;
            out.homotopies.push_back(
                {ws[1], ws[3], ws[5],
                 std::vector<IntervalElement>(universe->size(), IntervalElement(universe))});
            continue;
        }
        if (kind != "d" && kind != "m" && kind != "h") {
            lp.error("unknown directive '" + kind + "'");
            continue;
        }
        auto eq = lines[i].second.find('=');
        if (ws.size() < 3 || eq == std::string::npos) {
            lp.error("expected '" + kind + " <id> = <expr>'");
            continue;
        }
        const std::string& id = ws[1];
        auto idx = universe->index_of(id);
        if (!idx) {
            lp.error("unknown generator '" + id + "'");
            continue;
        }
        std::string rhs = lines[i].second.substr(eq + 1);

        if (kind == "d") {
            auto el = lp.parse_element(rhs);
            if (!el) continue;
            if (assigned[*idx]) {
                lp.error("duplicate differential for '" + id + "'");
                continue;
            }
            assigned[*idx] = true;
            bool bad = false;
            for (const auto& [m, c] : el->terms()) {
                if (m.word_length() < 2) {
                    lp.error("word length " + std::to_string(m.word_length()) +
                             " violates minimality in d " + id);
                    bad = true;
                    break;
                }
                if (m.degree != universe->gen(*idx).degree + 1) {
                    lp.error("degree mismatch in d " + id + ": term of degree " +
                             std::to_string(m.degree) + ", expected " +
                             std::to_string(universe->gen(*idx).degree + 1));
                    bad = true;
                    break;
                }
            }
            if (!bad) images[*idx] = std::move(*el);
            continue;
        }
        if (kind == "m") {
            if (block != Block::Morphism || out.morphisms.empty()) {
                lp.error("'m' line outside a morphism block");
                continue;
            }
            auto el = lp.parse_element(rhs);
            if (el) out.morphisms.back().images[*idx] = std::move(*el);
            continue;
        }
        // kind == "h"
        if (block != Block::Homotopy || out.homotopies.empty()) {
            lp.error("'h' line outside a homotopy block");
            continue;
        }
        auto iv = lp.parse_interval(rhs, true);
        if (iv) out.homotopies.back().images[*idx] = std::move(*iv);
    }
    if (!errors.empty()) return errors;

    try {
        out.model = MinimalModel::create(name, universe, Derivation(universe, std::move(images)));
    } catch (const std::exception& e) {
        errors.push_back({lines[0].first, e.what()});
        return errors;
    }
    return out;
}

std::string print_model(const MinimalModel& model) {
    std::ostringstream os;
    const GeneratorSet& u = *model.universe();
    os << "model " << model.name() << " maxdeg " << u.max_degree() << "\n";
    for (uint32_t i = 0; i < u.size(); ++i) {
        os << "gen " << u.gen(i).name << " deg " << u.gen(i).degree;
        if (u.gen(i).declared_step) os << " step " << *u.gen(i).declared_step;
        os << "\n";
    }
    for (uint32_t i = 0; i < u.size(); ++i) {
        const Element& img = model.differential().image(i);
        if (!img.is_zero()) os << "d " << u.gen(i).name << " = " << img.to_string() << "\n";
    }
    return os.str();
}

}  // namespace sullivan
