#pragma once

#include <cctype>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "hopfore/errors.hpp"

namespace hopfore::expr {

// Tiny arithmetic expression tree shared by the commutative scalar parser and
// the Ore element parser.  Products keep their written order so noncommutative
// evaluation can normalize them.
struct node {
    enum class kind { integer, variable, sum, product, power, negate, divide };
    kind k;
    mpz_class value;              // integer
    std::string name;             // variable
    std::vector<node> children;   // sum / product / negate / divide
    std::uint64_t exponent = 0;   // power (applies to children[0])
};

namespace detail {

struct parser {
    std::string_view s;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw parse_error("parse error at position " + std::to_string(pos) + ": " + what +
                          " in \"" + std::string(s) + "\"");
    }

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }

    node parse_expr() {
        node sum;
        sum.k = node::kind::sum;
        bool negate_first = false;
        if (eat('+')) {
        } else if (eat('-')) {
            negate_first = true;
        }
        node first = parse_term();
        if (negate_first) {
            node n;
            n.k = node::kind::negate;
            n.children.push_back(std::move(first));
            first = std::move(n);
        }
        sum.children.push_back(std::move(first));
        while (true) {
            if (eat('+')) {
                sum.children.push_back(parse_term());
            } else if (eat('-')) {
                node n;
                n.k = node::kind::negate;
                n.children.push_back(parse_term());
                sum.children.push_back(std::move(n));
            } else {
                break;
            }
        }
        if (sum.children.size() == 1) return std::move(sum.children.front());
        return sum;
    }

    node parse_term() {
        node prod;
        prod.k = node::kind::product;
        prod.children.push_back(parse_factor());
        while (true) {
            if (eat('*')) {
                prod.children.push_back(parse_factor());
            } else if (peek() == '/') {
                ++pos;
                node div;
                div.k = node::kind::divide;
                div.children.push_back(std::move(prod));
                div.children.push_back(parse_factor());
                prod = node{};
                prod.k = node::kind::product;
                prod.children.push_back(std::move(div));
            } else {
                break;
            }
        }
        if (prod.children.size() == 1) return std::move(prod.children.front());
        return prod;
    }

    node parse_factor() {
        if (eat('-')) {
            node n;
            n.k = node::kind::negate;
            n.children.push_back(parse_factor());
            return n;
        }
        node base = parse_primary();
        if (eat('^')) {
            node p;
            p.k = node::kind::power;
            p.exponent = parse_uint();
            p.children.push_back(std::move(base));
            return p;
        }
        return base;
    }

    std::uint64_t parse_uint() {
        skip_ws();
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos]))) fail("expected exponent");
        std::uint64_t v = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            v = v * 10 + static_cast<std::uint64_t>(s[pos] - '0');
            if (v > (std::uint64_t{1} << 40)) fail("exponent too large");
            ++pos;
        }
        return v;
    }

    node parse_primary() {
        skip_ws();
        if (pos >= s.size()) fail("unexpected end of input");
        char c = s[pos];
        if (c == '(') {
            ++pos;
            node inner = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            node n;
            n.k = node::kind::integer;
            n.value = mpz_class(std::string(s.substr(start, pos - start)), 10);
            return n;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos;
            while (pos < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_' || s[pos] == '\'')) {
                ++pos;
            }
            node n;
            n.k = node::kind::variable;
            n.name = std::string(s.substr(start, pos - start));
            return n;
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

} // namespace detail

inline node parse(std::string_view text) {
    detail::parser p{text};
    node n = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return n;
}

} // namespace hopfore::expr
