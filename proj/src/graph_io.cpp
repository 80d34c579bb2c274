#include "wickgraph/graph_io.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "wickgraph/matching.hpp"

namespace wickgraph {

ParseError::ParseError(const std::string& msg, int line_, int column_)
    : std::runtime_error([&] {
          std::ostringstream os;
          os << "line " << line_ << ", column " << column_ << ": " << msg;
          return os.str();
      }()),
      line(line_),
      column(column_) {}

namespace {

struct Token {
    enum Kind { Integer, Symbol, Name, End } kind = End;
    long value = 0;   // Integer
    char symbol = 0;  // Symbol: one of = ; : , { }
    std::string name;
    int line = 1, column = 1;
};

class Lexer {
  public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, tok_.line, tok_.column); }

  private:
    void advance() {
        while (pos_ < text_.size() && std::isspace((unsigned char)text_[pos_])) step();
        tok_ = Token();
        tok_.line = line_;
        tok_.column = column_;
        if (pos_ >= text_.size()) {
            tok_.kind = Token::End;
            return;
        }
        const char c = text_[pos_];
        if (std::isdigit((unsigned char)c)) {
            long v = 0;
            while (pos_ < text_.size() && std::isdigit((unsigned char)text_[pos_])) {
                v = v * 10 + (text_[pos_] - '0');
                if (v > 1000000) throw ParseError("number too large", line_, column_);
                step();
            }
            tok_.kind = Token::Integer;
            tok_.value = v;
            return;
        }
        if (std::isalpha((unsigned char)c)) {
            std::string name;
            while (pos_ < text_.size() && std::isalnum((unsigned char)text_[pos_])) {
                name.push_back(text_[pos_]);
                step();
            }
            tok_.kind = Token::Name;
            tok_.name = name;
            return;
        }
        if (c == '=' || c == ';' || c == ':' || c == ',' || c == '{' || c == '}') {
            tok_.kind = Token::Symbol;
            tok_.symbol = c;
            step();
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line_, column_);
    }

    void step() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1, column_ = 1;
    Token tok_;
};

long expect_integer(Lexer& lex, const char* what) {
    if (lex.peek().kind != Token::Integer) lex.fail(std::string("expected ") + what);
    return lex.take().value;
}

void expect_symbol(Lexer& lex, char sym) {
    if (lex.peek().kind != Token::Symbol || lex.peek().symbol != sym) {
        lex.fail(std::string("expected '") + sym + "'");
    }
    lex.take();
}

bool accept_symbol(Lexer& lex, char sym) {
    if (lex.peek().kind == Token::Symbol && lex.peek().symbol == sym) {
        lex.take();
        return true;
    }
    return false;
}

// pair list "{a,b},{c,d},..." with labels in [lo, hi]; `seen` catches
// repeats at the offending token.
EdgeList parse_pairs(Lexer& lex, int n, int lo, int hi) {
    EdgeList edges;
    std::vector<char> seen(hi - lo + 1, 0);
    while (true) {
        expect_symbol(lex, '{');
        Edge e;
        for (int side = 0; side < 2; ++side) {
            const Token t = lex.peek();
            const long v = expect_integer(lex, "vertex label");
            if (v < lo || v > hi) {
                std::ostringstream os;
                os << "vertex " << v << " out of range [" << lo << ", " << hi << "]";
                throw ParseError(os.str(), t.line, t.column);
            }
            if (seen[v - lo]) {
                std::ostringstream os;
                os << "vertex " << v << " appears twice";
                throw ParseError(os.str(), t.line, t.column);
            }
            seen[v - lo] = 1;
            (side == 0 ? e.first : e.second) = (int)v;
            if (side == 0) expect_symbol(lex, ',');
        }
        expect_symbol(lex, '}');
        edges.push_back(e);
        if (!accept_symbol(lex, ',')) break;
    }
    if ((int)edges.size() != n) {
        std::ostringstream os;
        os << "expected " << n << " pairs, got " << edges.size();
        lex.fail(os.str());
    }
    return edges;
}

void normalize(EdgeList& edges) {
    for (Edge& e : edges) {
        if (e.first > e.second) std::swap(e.first, e.second);
    }
    std::sort(edges.begin(), edges.end());
}

}  // namespace

GraphRecord parse_record(const std::string& text, GraphConvention convention) {
    Lexer lex(text);
    if (lex.peek().kind != Token::Name || lex.peek().name != "n") lex.fail("expected 'n'");
    lex.take();
    expect_symbol(lex, '=');
    const long n = expect_integer(lex, "graph size");
    if (n < 1 || n > 500) lex.fail("graph size out of supported range");
    accept_symbol(lex, ';');

    struct Section {
        int color;
        EdgeList edges;
        Token at;
    };
    std::vector<Section> sections;
    while (lex.peek().kind != Token::End) {
        const Token at = lex.peek();
        const long color = expect_integer(lex, "color label");
        if (color < 1 || color > 3) throw ParseError("color must be 1, 2, or 3", at.line, at.column);
        expect_symbol(lex, ':');
        // Label bounds depend on the convention; the compact form is
        // 1-based. Decide after collecting: parse permissively as
        // [0, 2n] and re-check below.
        EdgeList edges = parse_pairs(lex, (int)n, 0, 2 * (int)n);
        sections.push_back({(int)color, std::move(edges), at});
        accept_symbol(lex, ';');
    }
    if (sections.empty()) lex.fail("expected at least one edge-list section");

    GraphConvention resolved = convention;
    if (resolved == GraphConvention::auto_detect) {
        resolved = (sections.size() == 1 && sections[0].color == 3)
                       ? GraphConvention::compact
                       : GraphConvention::explicit_colors;
    }

    GraphRecord rec;
    rec.n = (int)n;
    rec.convention = resolved;
    if (resolved == GraphConvention::compact) {
        if (sections.size() != 1 || sections[0].color != 3) {
            throw ParseError("compact form has exactly one section, for color 3",
                             sections[0].at.line, sections[0].at.column);
        }
        for (Edge& e : sections[0].edges) {
            for (int* v : {&e.first, &e.second}) {
                if (*v < 1) {
                    throw ParseError("compact form labels are 1-based", sections[0].at.line,
                                     sections[0].at.column);
                }
                *v -= 1;
            }
        }
        rec.edges[2] = std::move(sections[0].edges);
        normalize(rec.edges[2]);
    } else {
        if (sections.size() != 3) lex.fail("explicit form needs sections for colors 1, 2, 3");
        bool have[4] = {false, false, false, false};
        for (Section& s : sections) {
            if (have[s.color]) {
                throw ParseError("duplicate color section", s.at.line, s.at.column);
            }
            have[s.color] = true;
            for (const Edge& e : s.edges) {
                if (e.first >= 2 * rec.n || e.second >= 2 * rec.n) {
                    throw ParseError("explicit form labels are 0-based and below 2n",
                                     s.at.line, s.at.column);
                }
            }
            rec.edges[s.color - 1] = std::move(s.edges);
            normalize(rec.edges[s.color - 1]);
        }
    }
    return rec;
}

std::string serialize_record(const GraphRecord& record) {
    GraphRecord rec = record;
    for (EdgeList& e : rec.edges) normalize(e);
    std::ostringstream os;
    if (rec.convention == GraphConvention::compact) {
        os << "n=" << rec.n << "; 3: ";
        for (std::size_t i = 0; i < rec.edges[2].size(); ++i) {
            if (i) os << ",";
            os << "{" << rec.edges[2][i].first + 1 << "," << rec.edges[2][i].second + 1 << "}";
        }
        os << "\n";
    } else {
        os << "n=" << rec.n << "\n";
        for (int c = 0; c < 3; ++c) {
            os << c + 1 << ": ";
            for (std::size_t i = 0; i < rec.edges[c].size(); ++i) {
                if (i) os << ",";
                os << "{" << rec.edges[c][i].first << "," << rec.edges[c][i].second << "}";
            }
            os << "\n";
        }
    }
    return os.str();
}

ColoredGraph graph_from_record(const GraphRecord& record) {
    if (record.convention == GraphConvention::compact) {
        return ColoredGraph::from_edges(record.n, ring_even_matching(record.n).edges(),
                                        ring_odd_matching(record.n).edges(),
                                        record.edges[2]);
    }
    return ColoredGraph::from_edges(record.n, record.edges[0], record.edges[1],
                                    record.edges[2]);
}

GraphRecord record_from_graph(const ColoredGraph& g, GraphConvention convention) {
    GraphRecord rec;
    rec.n = g.n();
    if (convention == GraphConvention::auto_detect) {
        convention = (g.partners(1) == ring_even_matching(g.n()).partner &&
                      g.partners(2) == ring_odd_matching(g.n()).partner)
                         ? GraphConvention::compact
                         : GraphConvention::explicit_colors;
    }
    rec.convention = convention;
    if (convention == GraphConvention::compact) {
        if (g.partners(1) != ring_even_matching(g.n()).partner ||
            g.partners(2) != ring_odd_matching(g.n()).partner) {
            throw ValidationError(
                "compact convention needs colors 1 and 2 equal to the ring matchings; "
                "use the explicit convention");
        }
        rec.edges[2] = g.edges(3);
    } else {
        for (int c = 0; c < 3; ++c) rec.edges[c] = g.edges(c + 1);
    }
    return rec;
}

ColoredGraph parse_graph(const std::string& text, GraphConvention convention) {
    return graph_from_record(parse_record(text, convention));
}

std::string serialize_graph(const ColoredGraph& g, GraphConvention convention) {
    return serialize_record(record_from_graph(g, convention));
}

}  // namespace wickgraph
