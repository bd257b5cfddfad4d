#pragma once

/**
    \file
    \brief curve config files

    Flat key-value text with sections, one key per line, `=` separator, arrays in
    square brackets, `#` starts a comment:

        [curve]
        name = example22
        dim = 3
        components = [t, t^2/2, t^3/6]
        domain = [-1, 1]

        [params]
        u = 0.5

        [grid]
        t_steps = 201
        s_steps = 101
        s_range = [-1, 1]

    Every [params] entry is substituted (as a whole word) into the component
    expressions before they are parsed. Negative values are inserted in parentheses.
*/

#include <frontal/curve.hpp>
#include <frontal/error.hpp>
#include <frontal/expr.hpp>

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace frontal {

struct GridSpec
{
    int t_steps = 201;
    int s_steps = 101;
    double s_lo = -1.0;
    double s_hi = 1.0;
};

struct CurveConfig
{
    std::string name;
    int dim = 0;
    std::vector<std::string> components;  // after parameter substitution
    Interval domain{};
    std::map<std::string, double> params;
    GridSpec grid{};
};

namespace detail {

inline std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

[[noreturn]] inline void config_fail(int line, std::string const& msg)
{
    throw ConfigError("line " + std::to_string(line) + ": " + msg);
}

inline double to_double(std::string_view s, int line)
{
    s = trim(s);
    double v = 0.0;
    auto const res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) config_fail(line, "expected a number, got '" + std::string(s) + "'");
    return v;
}

inline int to_int(std::string_view s, int line)
{
    s = trim(s);
    int v = 0;
    auto const res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) config_fail(line, "expected an integer, got '" + std::string(s) + "'");
    return v;
}

inline std::vector<std::string> to_array(std::string_view s, int line)
{
    s = trim(s);
    if (s.size() < 2 || s.front() != '[' || s.back() != ']') config_fail(line, "expected an array in square brackets");
    s = s.substr(1, s.size() - 2);
    std::vector<std::string> out;
    if (trim(s).empty()) return out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || (s[i] == ',' && depth == 0)) {
            auto const item = trim(s.substr(start, i - start));
            if (item.empty()) config_fail(line, "empty array element");
            out.emplace_back(item);
            start = i + 1;
        } else if (s[i] == '(') {
            ++depth;
        } else if (s[i] == ')') {
            --depth;
        }
    }
    return out;
}

inline bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

} // namespace detail

// Whole-word replacement of every parameter name by its value.
inline std::string substitute_params(std::string_view text, std::map<std::string, double> const& params)
{
    std::string out;
    std::size_t i = 0;
    while (i < text.size()) {
        if (std::isalpha(static_cast<unsigned char>(text[i])) || text[i] == '_') {
            std::size_t j = i;
            while (j < text.size() && detail::is_ident_char(text[j])) ++j;
            std::string const word(text.substr(i, j - i));
            auto const it = params.find(word);
            if (it != params.end()) {
                std::string const v = detail::format_number(it->second);
                out += it->second < 0.0 ? "(" + v + ")" : v;
            } else {
                out += word;
            }
            i = j;
        } else {
            out += text[i++];
        }
    }
    return out;
}

inline CurveConfig parse_config(std::string_view text)
{
    CurveConfig cfg;
    std::string section;
    std::vector<std::string> raw_components;
    int components_line = 0;
    bool have_dim = false;
    bool have_domain = false;
    int line_no = 0;

    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (auto const hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        if (line.front() == '[' && line.back() == ']' && line.find('=') == std::string_view::npos) {
            section = std::string(detail::trim(line.substr(1, line.size() - 2)));
            if (section != "curve" && section != "params" && section != "grid")
                detail::config_fail(line_no, "unknown section [" + section + "]");
            continue;
        }
        auto const eq = line.find('=');
        if (eq == std::string_view::npos) detail::config_fail(line_no, "expected key = value");
        std::string const key(detail::trim(line.substr(0, eq)));
        std::string_view const value = detail::trim(line.substr(eq + 1));
        if (key.empty()) detail::config_fail(line_no, "empty key");

        if (section == "curve") {
            if (key == "name") cfg.name = std::string(value);
            else if (key == "dim") {
                cfg.dim = detail::to_int(value, line_no);
                have_dim = true;
            } else if (key == "components") {
                raw_components = detail::to_array(value, line_no);
                components_line = line_no;
            } else if (key == "domain") {
                auto const d = detail::to_array(value, line_no);
                if (d.size() != 2) detail::config_fail(line_no, "domain needs two values");
                cfg.domain = {detail::to_double(d[0], line_no), detail::to_double(d[1], line_no)};
                have_domain = true;
            } else detail::config_fail(line_no, "unknown key '" + key + "' in [curve]");
        } else if (section == "params") {
            if (key == "t" || key == "sin" || key == "cos" || key == "exp" || key == "sqrt")
                detail::config_fail(line_no, "parameter name '" + key + "' is reserved");
            for (char c : key)
                if (!detail::is_ident_char(c)) detail::config_fail(line_no, "invalid parameter name '" + key + "'");
            cfg.params[key] = detail::to_double(value, line_no);
        } else if (section == "grid") {
            if (key == "t_steps") cfg.grid.t_steps = detail::to_int(value, line_no);
            else if (key == "s_steps" || key == "u_steps") cfg.grid.s_steps = detail::to_int(value, line_no);
            else if (key == "s_range") {
                auto const r = detail::to_array(value, line_no);
                if (r.size() != 2) detail::config_fail(line_no, "s_range needs two values");
                cfg.grid.s_lo = detail::to_double(r[0], line_no);
                cfg.grid.s_hi = detail::to_double(r[1], line_no);
            } else detail::config_fail(line_no, "unknown key '" + key + "' in [grid]");
        } else {
            detail::config_fail(line_no, "key outside of a section");
        }
    }

    if (cfg.name.empty()) throw ConfigError("missing curve name");
    if (!have_dim) throw ConfigError("missing curve dim");
    if (cfg.dim < 2) throw ConfigError("dim must be at least 2");
    if (static_cast<int>(raw_components.size()) != cfg.dim)
        throw ConfigError("line " + std::to_string(components_line) + ": components length != dim");
    if (!have_domain) throw ConfigError("missing curve domain");
    if (!(cfg.domain.lo < cfg.domain.hi)) throw ConfigError("domain must satisfy t_lo < t_hi");
    if (cfg.grid.t_steps < 2 || cfg.grid.s_steps < 2) throw ConfigError("grid step counts must be at least 2");
    if (!(cfg.grid.s_lo < cfg.grid.s_hi)) throw ConfigError("s_range must be increasing");

    for (auto const& c : raw_components) {
        cfg.components.push_back(substitute_params(c, cfg.params));
        try {
            (void)parse(cfg.components.back());
        } catch (ParseError const& e) {
            throw ConfigError("line " + std::to_string(components_line) + ": component '" + c + "': " + e.what());
        }
    }
    return cfg;
}

inline CurveConfig load_config(std::string const& path)
{
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

inline Curve make_curve(CurveConfig const& cfg)
{
    return Curve::from_strings(cfg.name, cfg.components, cfg.domain);
}

} // namespace frontal
