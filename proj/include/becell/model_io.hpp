#pragma once

#include <filesystem>
#include <fstream>

#include "becell/cell_algebra.hpp"

namespace becell {

class ParseError : public Error {
public:
    ParseError(const std::string& msg, int line = -1, int col = -1)
        : Error(line >= 0 ? "line " + std::to_string(line) +
                                (col >= 0 ? ", column " + std::to_string(col) : "") + ": " + msg
                          : msg),
          line(line),
          col(col) {}
    int line;
    int col;
};

namespace detail {

/// Recursive-descent parser for the element grammar:
///   element := '0' | term ('+' term)*
///   term    := IDENT | op '(' element (',' element)* ')'
///   op      := 'e' '[' INT ']' | '[' perm ('|' perm)* ']'
/// Nested applications are expanded eagerly through apply_operad.
class ElementParser {
public:
    ElementParser(std::string_view text, const std::vector<Generator>* context, int line)
        : text_(text), line_(line) {
        if (context)
            for (const Generator& g : *context) ctx_[g.name] = g;
    }

    AlgElement parse_element() {
        AlgElement out = parse_term();
        skip_ws();
        while (peek() == '+') {
            ++pos_;
            out += parse_term();
            skip_ws();
        }
        return out;
    }

    EElement parse_eelement() {
        EElement out = parse_operation();
        skip_ws();
        while (peek() == '+') {
            ++pos_;
            out += parse_operation();
            skip_ws();
        }
        return out;
    }

    void expect_end() {
        skip_ws();
        if (pos_ != text_.size())
            fail("unexpected trailing input '" + std::string(text_.substr(pos_)) + "'");
    }

private:
    static bool ident_start(char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
    }
    static bool ident_char(char c) {
        return ident_start(c) || (c >= '0' && c <= '9') || c == '\'' || c == '^';
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void skip_ws() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, line_, static_cast<int>(pos_) + 1);
    }

    void expect(char c) {
        skip_ws();
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    int parse_int() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
        if (start == pos_) fail("expected a number");
        return std::stoi(std::string(text_.substr(start, pos_ - start)));
    }

    std::string parse_ident() {
        skip_ws();
        size_t start = pos_;
        if (!ident_start(peek())) fail("expected an identifier");
        while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    Perm parse_perm_token() {
        skip_ws();
        if (peek() == '(') {
            std::vector<uint8_t> img;
            ++pos_;
            while (true) {
                int v = parse_int();
                if (v < 1 || v > 255) fail("permutation point out of range");
                img.push_back(static_cast<uint8_t>(v));
                skip_ws();
                if (peek() == ',') {
                    ++pos_;
                    continue;
                }
                break;
            }
            expect(')');
            try {
                return Perm(std::move(img));
            } catch (const Error& e) {
                fail(e.what());
            }
        }
        std::vector<uint8_t> img;
        while (peek() >= '1' && peek() <= '9') {
            img.push_back(static_cast<uint8_t>(peek() - '0'));
            ++pos_;
        }
        if (img.empty()) fail("expected a permutation");
        try {
            return Perm(std::move(img));
        } catch (const Error& e) {
            fail(e.what());
        }
    }

    EElement parse_operation() {
        skip_ws();
        if (peek() == '0') {
            ++pos_;
            return EElement();
        }
        if (peek() == '[') {
            ++pos_;
            std::vector<Perm> tuple;
            tuple.push_back(parse_perm_token());
            skip_ws();
            while (peek() == '|') {
                ++pos_;
                tuple.push_back(parse_perm_token());
                skip_ws();
            }
            expect(']');
            try {
                return EElement(ESimplex(tuple));
            } catch (const Error& e) {
                fail(e.what());
            }
        }
        if (ident_start(peek())) {
            size_t save = pos_;
            std::string name = parse_ident();
            if (name == "e" && peek() == '[') {
                ++pos_;
                int q = parse_int();
                expect(']');
                return EElement(e_standard(q));
            }
            pos_ = save;
        }
        fail("expected an operation (e[q] or [w0|w1|...])");
    }

    AlgElement parse_term() {
        skip_ws();
        if (peek() == '0') {
            ++pos_;
            return AlgElement::zero();
        }
        if (peek() == '[') {
            EElement op = parse_operation();
            return parse_application(op);
        }
        if (!ident_start(peek())) fail("expected a generator or an operation");
        size_t save = pos_;
        std::string name = parse_ident();
        if (name == "e" && peek() == '[') {
            pos_ = save;
            EElement op = parse_operation();
            return parse_application(op);
        }
        auto it = ctx_.find(name);
        if (it == ctx_.end()) fail("unknown generator '" + name + "'");
        return gen_element(it->second);
    }

    AlgElement parse_application(const EElement& op) {
        expect('(');
        std::vector<AlgElement> args;
        args.push_back(parse_element());
        skip_ws();
        while (peek() == ',') {
            ++pos_;
            args.push_back(parse_element());
            skip_ws();
        }
        expect(')');
        try {
            return apply_operad(op, args);
        } catch (const Error& e) {
            fail(e.what());
        }
    }

    std::string_view text_;
    size_t pos_ = 0;
    int line_;
    std::map<std::string, Generator> ctx_;
};

inline std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

} // namespace detail

inline AlgElement parse_element(const std::string& text, const std::vector<Generator>& context,
                                int line = -1) {
    detail::ElementParser parser(text, &context, line);
    AlgElement out = parser.parse_element();
    parser.expect_end();
    return out;
}

/// Operad elements without an algebra context, e.g. "e[2] + [21|12|21]".
inline EElement parse_eelement(const std::string& text, int line = -1) {
    detail::ElementParser parser(text, nullptr, line);
    EElement out = parser.parse_eelement();
    parser.expect_end();
    return out;
}

/// ModelFile format (line oriented, '#' comments):
///   algebra <name>
///   generator <name> degree <d> [stage <k>]
///   d <name> = <element>        (omitted lines mean d = 0)
inline CellAlgebra parse_model(const std::string& text, const std::string& fallback_name = "") {
    std::vector<std::pair<int, std::string>> lines;
    {
        std::istringstream is(text);
        std::string raw;
        int number = 0;
        while (std::getline(is, raw)) {
            ++number;
            size_t hash = raw.find('#');
            if (hash != std::string::npos) raw = raw.substr(0, hash);
            raw = detail::strip(raw);
            if (!raw.empty()) lines.emplace_back(number, raw);
        }
    }

    std::string name = fallback_name;
    std::vector<Generator> gens;
    std::vector<std::tuple<int, std::string, std::string>> d_lines; // line, gen, rhs

    for (auto& [number, content] : lines) {
        std::vector<std::string> tok = detail::split_ws(content);
        if (tok[0] == "algebra") {
            if (tok.size() != 2) throw ParseError("expected: algebra <name>", number);
            name = tok[1];
        } else if (tok[0] == "generator") {
            if (tok.size() != 4 && tok.size() != 6)
                throw ParseError("expected: generator <name> degree <d> [stage <k>]", number);
            if (tok[2] != "degree") throw ParseError("expected keyword 'degree'", number);
            Generator g;
            g.name = tok[1];
            try {
                g.degree = std::stoi(tok[3]);
            } catch (...) {
                throw ParseError("degree must be an integer", number);
            }
            if (tok.size() == 6) {
                if (tok[4] != "stage") throw ParseError("expected keyword 'stage'", number);
                try {
                    g.stage = std::stoi(tok[5]);
                } catch (...) {
                    throw ParseError("stage must be an integer", number);
                }
            }
            for (const Generator& existing : gens)
                if (existing.name == g.name)
                    throw ParseError("duplicate generator '" + g.name + "'", number);
            gens.push_back(g);
        } else if (tok[0] == "d") {
            size_t eq = content.find('=');
            if (eq == std::string::npos) throw ParseError("expected: d <name> = <element>", number);
            std::string lhs = detail::strip(content.substr(1, eq - 1));
            if (lhs.empty() || detail::split_ws(lhs).size() != 1)
                throw ParseError("expected: d <name> = <element>", number);
            d_lines.emplace_back(number, lhs, detail::strip(content.substr(eq + 1)));
        } else {
            throw ParseError("unknown directive '" + tok[0] + "'", number);
        }
    }

    DTable dtable;
    for (auto& [number, gname, rhs] : d_lines) {
        bool known = false;
        for (const Generator& g : gens) known = known || g.name == gname;
        if (!known) throw ParseError("differential for unknown generator '" + gname + "'", number);
        if (dtable.count(gname)) throw ParseError("duplicate differential for '" + gname + "'", number);
        dtable[gname] = parse_element(rhs, gens, number);
    }
    return make_algebra(name, std::move(gens), std::move(dtable));
}

inline std::string model_to_string(const CellAlgebra& A) {
    std::ostringstream os;
    os << "algebra " << A.name << '\n';
    for (const Generator& g : A.gens)
        os << "generator " << g.name << " degree " << g.degree << " stage " << g.stage << '\n';
    for (const Generator& g : A.gens) {
        const AlgElement& dg = A.d_of(g.name);
        if (!dg.is_zero()) os << "d " << g.name << " = " << to_string(dg) << '\n';
    }
    return os.str();
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file '" + path + "'");
    out << content;
}

inline CellAlgebra read_model_file(const std::string& path) {
    std::string fallback = std::filesystem::path(path).stem().string();
    return parse_model(read_file(path), fallback);
}

inline void write_model_file(const CellAlgebra& A, const std::string& path) {
    write_file(path, model_to_string(A));
}

/// Morphism file:
///   morphism <name> : <source-model-path> -> <target-model-path>
///   map <gen> = <element>           (elements in the target's generators)
/// Paths are resolved relative to the morphism file.
inline CellMorphism read_morphism_file(const std::string& path) {
    std::istringstream is(read_file(path));
    std::string raw;
    int number = 0;
    CellMorphism f;
    bool header_seen = false;
    while (std::getline(is, raw)) {
        ++number;
        size_t hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        raw = detail::strip(raw);
        if (raw.empty()) continue;
        std::vector<std::string> tok = detail::split_ws(raw);
        if (tok[0] == "morphism") {
            if (tok.size() != 6 || tok[2] != ":" || tok[4] != "->")
                throw ParseError("expected: morphism <name> : <source> -> <target>", number);
            f.name = tok[1];
            std::filesystem::path base = std::filesystem::path(path).parent_path();
            f.source = read_model_file((base / tok[3]).string());
            f.target = read_model_file((base / tok[5]).string());
            header_seen = true;
        } else if (tok[0] == "map") {
            if (!header_seen) throw ParseError("'map' before 'morphism' header", number);
            size_t eq = raw.find('=');
            if (eq == std::string::npos) throw ParseError("expected: map <gen> = <element>", number);
            std::string gname = detail::strip(raw.substr(3, eq - 3));
            if (!f.source.find(gname))
                throw ParseError("map for unknown source generator '" + gname + "'", number);
            f.assign[gname] = parse_element(detail::strip(raw.substr(eq + 1)), f.target.gens, number);
        } else {
            throw ParseError("unknown directive '" + tok[0] + "'", number);
        }
    }
    if (!header_seen) throw ParseError("missing 'morphism' header in '" + path + "'");
    return f;
}

inline std::string morphism_to_string(const CellMorphism& f, const std::string& source_path,
                                      const std::string& target_path) {
    std::ostringstream os;
    os << "morphism " << f.name << " : " << source_path << " -> " << target_path << '\n';
    for (const Generator& g : f.source.gens) {
        auto it = f.assign.find(g.name);
        if (it != f.assign.end()) os << "map " << g.name << " = " << to_string(it->second) << '\n';
    }
    return os.str();
}

/// Homotopy-correction file for the cylinder: lines 'phi <gen> = <element>',
/// elements written in cylinder coordinates (g', g'', sg).
inline std::map<std::string, AlgElement> read_phi_file(const std::string& path,
                                                       const std::vector<Generator>& universe) {
    std::istringstream is(read_file(path));
    std::string raw;
    int number = 0;
    std::map<std::string, AlgElement> out;
    while (std::getline(is, raw)) {
        ++number;
        size_t hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        raw = detail::strip(raw);
        if (raw.empty()) continue;
        std::vector<std::string> tok = detail::split_ws(raw);
        if (tok[0] != "phi") throw ParseError("expected: phi <gen> = <element>", number);
        size_t eq = raw.find('=');
        if (eq == std::string::npos) throw ParseError("expected: phi <gen> = <element>", number);
        std::string gname = detail::strip(raw.substr(3, eq - 3));
        if (out.count(gname)) throw ParseError("duplicate phi entry for '" + gname + "'", number);
        out[gname] = parse_element(detail::strip(raw.substr(eq + 1)), universe, number);
    }
    return out;
}

} // namespace becell
