// Copyright 2026 The lzphi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

// State-spec text format and report serialization.
//
//   # comment
//   setting <key> <value>         hbar, phi_nodes, theta_nodes, hermite_nodes,
//                                 tolerance, normalize
//   state <family> key=value ...  circular   m=<int>
//                                 rotor      c={<m>:(re,im),...}
//                                 spherical  l=<int> c=[(re,im),...] | c={<m>:(re,im),...}  I=<real>
//                                 pendulum   n=<int> I=<real> omega=<real>
//                                 any family name=<ident> hbar=<real>
//   relations <ID>[(<k>=<v>,...)] ...
//
// Relation parameters: alpha=<real>, N=<int>, N1=<int>, A=<obs>, B=<obs> where
// <obs> is Lz, Phi, PhiSquared, SinPhi, CosPhi, Theta, ThetaPhi or Chi(<int>).

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstdio>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "lzphi/error.hpp"
#include "lzphi/numerics.hpp"
#include "lzphi/relations.hpp"
#include "lzphi/states.hpp"

namespace lzphi {

struct Settings {
    double hbar = 1.0;
    QuadratureSettings quad;
    double tolerance = default_tolerance;
    bool normalize = false;

    friend bool operator==(const Settings &, const Settings &) = default;
};

struct CircularSpec {
    int m = 0;
    friend bool operator==(const CircularSpec &, const CircularSpec &) = default;
};

struct RotorSpec {
    std::map<int, complex> c;
    friend bool operator==(const RotorSpec &, const RotorSpec &) = default;
};

struct SphericalSpec {
    int l = 0;
    std::vector<complex> c;
    double inertia = 1.0;
    friend bool operator==(const SphericalSpec &, const SphericalSpec &) = default;
};

struct PendulumSpec {
    int n = 0;
    double inertia = 1.0;
    double omega = 1.0;
    friend bool operator==(const PendulumSpec &, const PendulumSpec &) = default;
};

/// Constructor form of a state as written in a spec file.
struct StateEntry {
    std::string name;
    std::optional<double> hbar; // falls back to the hbar setting
    std::variant<CircularSpec, RotorSpec, SphericalSpec, PendulumSpec> spec;

    friend bool operator==(const StateEntry &, const StateEntry &) = default;
};

struct Selection {
    RelationId id = RelationId::R5;
    RelationParams params;
    friend bool operator==(const Selection &, const Selection &) = default;
};

struct SpecDocument {
    Settings settings;
    std::vector<StateEntry> states;
    std::vector<Selection> selections;

    friend bool operator==(const SpecDocument &, const SpecDocument &) = default;
};

/// Builds the validated state; normalization follows the settings flag.
inline State build_state(const StateEntry &entry, const Settings &settings) {
    const double hbar = entry.hbar.value_or(settings.hbar);
    return std::visit(
        [&](const auto &spec) -> State {
            using T = std::decay_t<decltype(spec)>;
            if constexpr (std::is_same_v<T, CircularSpec>) {
                return CircularState(spec.m, hbar);
            } else if constexpr (std::is_same_v<T, RotorSpec>) {
                return RotorSuperposition::make(spec.c, hbar, settings.normalize);
            } else if constexpr (std::is_same_v<T, SphericalSpec>) {
                return SphericalState::make(spec.l, spec.c, hbar, spec.inertia, settings.normalize);
            } else {
                return PendulumState(spec.n, spec.inertia, spec.omega, hbar);
            }
        },
        entry.spec);
}

namespace detail {

class LineParser {
public:
    LineParser(std::string_view text, int line) : text_(text), line_(line) {}

    [[noreturn]] void fail(ErrorCode code, const std::string &message) const {
        throw Error(code, message, line_, static_cast<int>(pos_) + 1);
    }
    [[noreturn]] void fail_at(std::size_t pos, ErrorCode code, const std::string &message) const {
        throw Error(code, message, line_, static_cast<int>(pos) + 1);
    }

    void skip_space() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\r')) ++pos_;
    }
    [[nodiscard]] bool at_end() {
        skip_space();
        return pos_ >= text_.size();
    }
    [[nodiscard]] std::size_t position() const noexcept { return pos_; }
    [[nodiscard]] char peek() const noexcept { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    bool accept(char c) {
        skip_space();
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) fail(ErrorCode::Syntax, std::string("expected '") + c + "'");
    }

    std::string identifier() {
        skip_space();
        const std::size_t start = pos_;
        if (!(std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_')) {
            fail(ErrorCode::Syntax, "expected an identifier");
        }
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    int integer() {
        skip_space();
        const std::size_t start = pos_;
        std::size_t p = pos_;
        if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
        const std::size_t digits = p;
        while (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) ++p;
        if (p == digits) fail(ErrorCode::Syntax, "expected an integer");
        if (p < text_.size() && (text_[p] == '.' || text_[p] == 'e' || text_[p] == 'E')) {
            fail_at(start, ErrorCode::Syntax, "integers must not carry a decimal point or exponent");
        }
        const char *first = text_.data() + start + (text_[start] == '+' ? 1 : 0);
        int value = 0;
        const auto [ptr, ec] = std::from_chars(first, text_.data() + p, value);
        if (ec != std::errc{} || ptr != text_.data() + p) fail_at(start, ErrorCode::Syntax, "integer out of range");
        pos_ = p;
        return value;
    }

    double real() {
        skip_space();
        const std::size_t start = pos_;
        std::size_t p = pos_;
        if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
        const std::size_t mantissa = p;
        while (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) ++p;
        if (p < text_.size() && text_[p] == '.') {
            ++p;
            while (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) ++p;
        }
        if (p == mantissa || (p == mantissa + 1 && text_[mantissa] == '.')) fail(ErrorCode::Syntax, "expected a number");
        if (p < text_.size() && (text_[p] == 'e' || text_[p] == 'E')) {
            std::size_t q = p + 1;
            if (q < text_.size() && (text_[q] == '+' || text_[q] == '-')) ++q;
            const std::size_t exp_digits = q;
            while (q < text_.size() && std::isdigit(static_cast<unsigned char>(text_[q]))) ++q;
            if (q == exp_digits) fail_at(p, ErrorCode::Syntax, "malformed exponent");
            p = q;
        }
        const char *first = text_.data() + start + (text_[start] == '+' ? 1 : 0);
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(first, text_.data() + p, value);
        if (ec != std::errc{} || ptr != text_.data() + p || !std::isfinite(value)) {
            fail_at(start, ErrorCode::Syntax, "number out of range");
        }
        pos_ = p;
        return value;
    }

    // "(re,im)" or a bare real.
    complex complex_number() {
        if (accept('(')) {
            const double re = real();
            expect(',');
            const double im = real();
            expect(')');
            return {re, im};
        }
        return {real(), 0.0};
    }

    std::vector<complex> complex_list() {
        expect('[');
        std::vector<complex> out;
        if (accept(']')) return out;
        do {
            out.push_back(complex_number());
        } while (accept(','));
        expect(']');
        return out;
    }

    std::map<int, complex> complex_map() {
        expect('{');
        std::map<int, complex> out;
        if (accept('}')) return out;
        do {
            const std::size_t at = (skip_space(), pos_);
            const int m = integer();
            expect(':');
            const complex v = complex_number();
            if (!out.emplace(m, v).second) fail_at(at, ErrorCode::DuplicateKey, "coefficient for m=" + std::to_string(m) + " given twice");
        } while (accept(','));
        expect('}');
        return out;
    }

    ObservableKind observable() {
        const std::size_t at = (skip_space(), pos_);
        const std::string name = identifier();
        if (name == "Chi") {
            expect('(');
            const int n = integer();
            expect(')');
            return ObservableKind::chi(n);
        }
        if (auto kind = observable_from_name(name)) return *kind;
        fail_at(at, ErrorCode::InvalidParams, "unknown observable '" + name + "'");
    }

private:
    std::string_view text_;
    int line_;
    std::size_t pos_ = 0;
};

inline void parse_setting(LineParser &p, Settings &settings) {
    const std::size_t at = (p.skip_space(), p.position());
    const std::string key = p.identifier();
    auto node_count = [&](int &slot) {
        const std::size_t v_at = (p.skip_space(), p.position());
        const int v = p.integer();
        if (v < 2) p.fail_at(v_at, ErrorCode::InvalidArgument, key + " must be at least 2");
        slot = v;
    };
    if (key == "hbar") {
        const std::size_t v_at = (p.skip_space(), p.position());
        settings.hbar = p.real();
        if (!(settings.hbar > 0.0)) p.fail_at(v_at, ErrorCode::InvalidArgument, "hbar must be positive");
    } else if (key == "phi_nodes") {
        node_count(settings.quad.phi_nodes);
    } else if (key == "theta_nodes") {
        node_count(settings.quad.theta_nodes);
    } else if (key == "hermite_nodes") {
        node_count(settings.quad.hermite_nodes);
    } else if (key == "tolerance") {
        const std::size_t v_at = (p.skip_space(), p.position());
        settings.tolerance = p.real();
        if (!(settings.tolerance > 0.0)) p.fail_at(v_at, ErrorCode::InvalidArgument, "tolerance must be positive");
    } else if (key == "normalize") {
        const std::size_t v_at = (p.skip_space(), p.position());
        const std::string v = p.identifier();
        if (v == "true") {
            settings.normalize = true;
        } else if (v == "false") {
            settings.normalize = false;
        } else {
            p.fail_at(v_at, ErrorCode::Syntax, "normalize expects true or false");
        }
    } else {
        p.fail_at(at, ErrorCode::UnknownKey, "unknown setting '" + key + "'");
    }
    if (!p.at_end()) p.fail(ErrorCode::Syntax, "unexpected text after setting");
}

inline StateEntry parse_state(LineParser &p, std::size_t index) {
    const std::size_t family_at = (p.skip_space(), p.position());
    const std::string family = p.identifier();
    StateEntry entry;
    entry.name = "state" + std::to_string(index + 1);

    std::map<std::string, std::size_t> seen;
    std::optional<int> m, l, n;
    std::optional<double> inertia, omega;
    std::optional<std::variant<std::vector<complex>, std::map<int, complex>>> coeffs;

    const std::map<std::string, std::vector<std::string>> allowed{
        {"circular", {"name", "hbar", "m"}},
        {"rotor", {"name", "hbar", "c"}},
        {"spherical", {"name", "hbar", "l", "c", "I"}},
        {"pendulum", {"name", "hbar", "n", "I", "omega"}},
    };
    const auto fam = allowed.find(family);
    if (fam == allowed.end()) p.fail_at(family_at, ErrorCode::UnknownFamily, "unknown state family '" + family + "'");

    while (!p.at_end()) {
        const std::size_t key_at = p.position();
        const std::string key = p.identifier();
        if (std::find(fam->second.begin(), fam->second.end(), key) == fam->second.end()) {
            p.fail_at(key_at, ErrorCode::UnknownKey, "key '" + key + "' is not valid for " + family + " states");
        }
        if (!seen.emplace(key, key_at).second) p.fail_at(key_at, ErrorCode::DuplicateKey, "key '" + key + "' given twice");
        p.expect('=');
        const std::size_t value_at = (p.skip_space(), p.position());
        if (key == "name") {
            entry.name = p.identifier();
        } else if (key == "hbar") {
            entry.hbar = p.real();
            if (!(*entry.hbar > 0.0)) p.fail_at(value_at, ErrorCode::InvalidArgument, "hbar must be positive");
        } else if (key == "m") {
            m = p.integer();
        } else if (key == "l") {
            l = p.integer();
            if (*l < 0) p.fail_at(value_at, ErrorCode::IndexRange, "l must be non-negative");
        } else if (key == "n") {
            n = p.integer();
            if (*n < 0 || *n > max_hermite_order)
                p.fail_at(value_at, ErrorCode::IndexRange, "n must lie in 0.." + std::to_string(max_hermite_order));
        } else if (key == "I") {
            inertia = p.real();
            if (!(*inertia > 0.0)) p.fail_at(value_at, ErrorCode::InvalidArgument, "I must be positive");
        } else if (key == "omega") {
            omega = p.real();
            if (!(*omega > 0.0)) p.fail_at(value_at, ErrorCode::InvalidArgument, "omega must be positive");
        } else if (key == "c") {
            if (p.peek() == '[') {
                if (family == "rotor") p.fail_at(value_at, ErrorCode::Syntax, "rotor coefficients use the map form c={m:(re,im),...}");
                coeffs = p.complex_list();
            } else {
                coeffs = p.complex_map();
            }
        }
    }

    auto require = [&](bool present, const char *key) {
        if (!present) p.fail_at(family_at, ErrorCode::MissingKey, family + " state needs '" + key + "'");
    };
    if (family == "circular") {
        require(m.has_value(), "m");
        entry.spec = CircularSpec{*m};
    } else if (family == "rotor") {
        require(coeffs.has_value(), "c");
        entry.spec = RotorSpec{std::get<std::map<int, complex>>(*coeffs)};
    } else if (family == "spherical") {
        require(l.has_value(), "l");
        require(coeffs.has_value(), "c");
        SphericalSpec spec{*l, {}, inertia.value_or(1.0)};
        if (const auto *list = std::get_if<std::vector<complex>>(&*coeffs)) {
            if (list->size() != static_cast<std::size_t>(2 * *l + 1)) {
                p.fail_at(seen["c"], ErrorCode::IndexRange,
                          "spherical l=" + std::to_string(*l) + " needs " + std::to_string(2 * *l + 1) + " coefficients");
            }
            spec.c = *list;
        } else {
            spec.c.assign(static_cast<std::size_t>(2 * *l + 1), complex{});
            for (const auto &[mm, v] : std::get<std::map<int, complex>>(*coeffs)) {
                if (std::abs(mm) > *l) {
                    p.fail_at(seen["c"], ErrorCode::IndexRange,
                              "coefficient index |m|=" + std::to_string(std::abs(mm)) + " exceeds l=" + std::to_string(*l));
                }
                spec.c[static_cast<std::size_t>(mm + *l)] = v;
            }
        }
        entry.spec = std::move(spec);
    } else {
        require(n.has_value(), "n");
        entry.spec = PendulumSpec{*n, inertia.value_or(1.0), omega.value_or(1.0)};
    }
    return entry;
}

inline void parse_relations(LineParser &p, std::vector<Selection> &out) {
    if (p.at_end()) p.fail(ErrorCode::Syntax, "relations line lists no relation");
    while (!p.at_end()) {
        const std::size_t id_at = p.position();
        const std::string name = p.identifier();
        const auto id = relation_from_string(name);
        if (!id) {
            const bool excluded = name == "R9" || name == "R13";
            p.fail_at(id_at, ErrorCode::UnknownRelation,
                      "unknown relation '" + name + "'" + (excluded ? " (excluded: under-specified)" : ""));
        }
        Selection sel{*id, {}};
        std::optional<ObservableKind> a, b;
        if (p.peek() == '(') {
            p.expect('(');
            std::map<std::string, bool> seen;
            do {
                const std::size_t key_at = (p.skip_space(), p.position());
                const std::string key = p.identifier();
                if (!seen.emplace(key, true).second) p.fail_at(key_at, ErrorCode::DuplicateKey, "parameter '" + key + "' given twice");
                p.expect('=');
                if (key == "alpha" && *id == RelationId::R8) {
                    sel.params.alpha = p.real();
                } else if (key == "N" && *id == RelationId::R12) {
                    sel.params.N = p.integer();
                } else if (key == "N1" && *id == RelationId::R12) {
                    sel.params.N1 = p.integer();
                } else if (key == "A" && *id == RelationId::R60) {
                    a = p.observable();
                } else if (key == "B" && *id == RelationId::R60) {
                    b = p.observable();
                } else {
                    p.fail_at(key_at, ErrorCode::UnknownKey, "parameter '" + key + "' is not valid for " + name);
                }
            } while (p.accept(','));
            p.expect(')');
        }
        if (a && b) sel.params.pair = std::make_pair(*a, *b);
        else if (a || b) p.fail_at(id_at, ErrorCode::InvalidParams, "R60 needs both A and B");
        try {
            validate_params(sel.id, sel.params);
        } catch (const Error &e) {
            std::string msg = e.what();
            const auto cut = msg.find("] ");
            p.fail_at(id_at, e.code(), cut == std::string::npos ? msg : msg.substr(cut + 2));
        }
        out.push_back(std::move(sel));
    }
}

} // namespace detail

/// Parses and validates a spec document. Semantic checks (normalization,
/// quantum-number ranges) run after all settings are known, and report the
/// line of the offending state. A normalize override replaces the setting
/// before those checks.
inline SpecDocument parse(std::string_view text, std::optional<bool> normalize_override = std::nullopt) {
    SpecDocument doc;
    std::vector<int> state_lines;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

        detail::LineParser p(line, line_no);
        if (!p.at_end()) {
            const std::size_t kw_at = p.position();
            const std::string keyword = p.identifier();
            if (keyword == "setting") {
                detail::parse_setting(p, doc.settings);
            } else if (keyword == "state") {
                doc.states.push_back(detail::parse_state(p, doc.states.size()));
                state_lines.push_back(line_no);
            } else if (keyword == "relations") {
                detail::parse_relations(p, doc.selections);
            } else {
                p.fail_at(kw_at, ErrorCode::Syntax, "expected 'setting', 'state' or 'relations'");
            }
        }
        if (end == text.size()) break;
        start = end + 1;
    }
    if (doc.states.empty()) throw Error(ErrorCode::EmptyDocument, "spec declares no state", line_no, 1);
    if (doc.selections.empty()) throw Error(ErrorCode::EmptyDocument, "spec selects no relation", line_no, 1);
    if (normalize_override) doc.settings.normalize = *normalize_override;
    for (std::size_t i = 0; i < doc.states.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (doc.states[j].name == doc.states[i].name) {
                throw Error(ErrorCode::DuplicateKey, "state name '" + doc.states[i].name + "' used twice", state_lines[i], 1);
            }
        }
        try {
            (void)build_state(doc.states[i], doc.settings);
        } catch (const Error &e) {
            std::string msg = e.what();
            const auto cut = msg.find("] ");
            throw Error(e.code(), cut == std::string::npos ? msg : msg.substr(cut + 2), state_lines[i], 1);
        }
    }
    return doc;
}

namespace detail {

inline std::string shortest(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

inline std::string complex_literal(const complex &c) {
    return "(" + shortest(c.real()) + "," + shortest(c.imag()) + ")";
}

} // namespace detail

/// Canonical spec text; parse(to_spec_text(doc)) == doc.
inline std::string to_spec_text(const SpecDocument &doc) {
    using detail::shortest;
    std::ostringstream out;
    const auto &s = doc.settings;
    out << "setting hbar " << shortest(s.hbar) << '\n'
        << "setting phi_nodes " << s.quad.phi_nodes << '\n'
        << "setting theta_nodes " << s.quad.theta_nodes << '\n'
        << "setting hermite_nodes " << s.quad.hermite_nodes << '\n'
        << "setting tolerance " << shortest(s.tolerance) << '\n'
        << "setting normalize " << (s.normalize ? "true" : "false") << '\n';
    for (const auto &entry : doc.states) {
        std::visit(
            [&](const auto &spec) {
                using T = std::decay_t<decltype(spec)>;
                out << "state ";
                if constexpr (std::is_same_v<T, CircularSpec>) out << "circular";
                else if constexpr (std::is_same_v<T, RotorSpec>) out << "rotor";
                else if constexpr (std::is_same_v<T, SphericalSpec>) out << "spherical";
                else out << "pendulum";
                out << " name=" << entry.name;
                if (entry.hbar) out << " hbar=" << shortest(*entry.hbar);
                if constexpr (std::is_same_v<T, CircularSpec>) {
                    out << " m=" << spec.m;
                } else if constexpr (std::is_same_v<T, RotorSpec>) {
                    out << " c={";
                    bool first = true;
                    for (const auto &[m, v] : spec.c) {
                        out << (first ? "" : ",") << m << ':' << detail::complex_literal(v);
                        first = false;
                    }
                    out << '}';
                } else if constexpr (std::is_same_v<T, SphericalSpec>) {
                    out << " l=" << spec.l << " I=" << shortest(spec.inertia) << " c=[";
                    for (std::size_t i = 0; i < spec.c.size(); ++i) out << (i ? "," : "") << detail::complex_literal(spec.c[i]);
                    out << ']';
                } else {
                    out << " n=" << spec.n << " I=" << shortest(spec.inertia) << " omega=" << shortest(spec.omega);
                }
                out << '\n';
            },
            entry.spec);
    }
    out << "relations";
    for (const auto &sel : doc.selections) {
        out << ' ' << to_string(sel.id);
        std::vector<std::string> params;
        if (sel.params.alpha) params.push_back("alpha=" + shortest(*sel.params.alpha));
        if (sel.params.N) params.push_back("N=" + std::to_string(*sel.params.N));
        if (sel.params.N1) params.push_back("N1=" + std::to_string(*sel.params.N1));
        if (sel.params.pair) {
            params.push_back("A=" + to_string(sel.params.pair->first));
            params.push_back("B=" + to_string(sel.params.pair->second));
        }
        if (!params.empty()) {
            out << '(';
            for (std::size_t i = 0; i < params.size(); ++i) out << (i ? "," : "") << params[i];
            out << ')';
        }
    }
    out << '\n';
    return out.str();
}

enum class ReportFormat { Json, Csv };

namespace detail {

// Reals are emitted with 12 significant digits.
inline std::string fixed_digits(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
    return buf;
}

inline nlohmann::json json_number(double v) {
    if (!std::isfinite(v)) return nullptr;
    if (v == 0.0) return 0.0;
    return std::strtod(fixed_digits(v).c_str(), nullptr);
}

inline nlohmann::json json_complex(const complex &c) {
    return nlohmann::json{{"re", json_number(c.real())}, {"im", json_number(c.imag())}};
}

inline nlohmann::json report_json(const RelationReport &r) {
    nlohmann::json diag = nlohmann::json::object();
    for (const auto &[key, value] : r.diagnostics) {
        if (const auto *d = std::get_if<double>(&value)) diag[key] = json_number(*d);
        else diag[key] = json_complex(std::get<complex>(value));
    }
    nlohmann::json params = nlohmann::json::object();
    if (r.params.alpha) params["alpha"] = json_number(*r.params.alpha);
    if (r.params.N) params["N"] = *r.params.N;
    if (r.params.N1) params["N1"] = *r.params.N1;
    if (r.params.pair) {
        params["A"] = to_string(r.params.pair->first);
        params["B"] = to_string(r.params.pair->second);
    }
    nlohmann::json j{
        {"state", r.state_name},
        {"relation", to_string(r.relation)},
        {"lhs", json_number(r.lhs)},
        {"rhs", json_number(r.rhs)},
        {"verdict", to_string(r.verdict)},
        {"condition31", r.condition31},
        {"deficit", json_complex(r.deficit)},
        {"deficit_abs", json_number(std::abs(r.deficit))},
        {"diagnostics", std::move(diag)},
        {"params", std::move(params)},
    };
    if (r.sweep) {
        j["sweep"] = nlohmann::json{{"param", r.sweep->first}, {"value", json_number(r.sweep->second)}};
    }
    return j;
}

} // namespace detail

/// Deterministic report text: JSON with sorted keys, or CSV with columns
/// state_name, relation, lhs, rhs, verdict, condition31, deficit_abs (plus
/// sweep_param, sweep_value for scans).
inline std::string serialize_report(std::span<const RelationReport> reports, ReportFormat format) {
    if (reports.empty()) {
        throw Error(ErrorCode::EmptyReport, "no reports to serialize");
    }
    if (format == ReportFormat::Json) {
        nlohmann::json list = nlohmann::json::array();
        for (const auto &r : reports) list.push_back(detail::report_json(r));
        return nlohmann::json{{"reports", std::move(list)}}.dump(2) + "\n";
    }
    const bool swept = std::any_of(reports.begin(), reports.end(), [](const auto &r) { return r.sweep.has_value(); });
    std::string out = "state_name,relation,lhs,rhs,verdict,condition31,deficit_abs";
    if (swept) out += ",sweep_param,sweep_value";
    out += '\n';
    for (const auto &r : reports) {
        out += r.state_name + ',' + to_string(r.relation) + ',' + detail::fixed_digits(r.lhs) + ',' +
               detail::fixed_digits(r.rhs) + ',' + to_string(r.verdict) + ',' + (r.condition31 ? "true" : "false") + ',' +
               detail::fixed_digits(std::abs(r.deficit));
        if (swept) {
            out += ',' + (r.sweep ? r.sweep->first : std::string()) + ',' + (r.sweep ? detail::fixed_digits(r.sweep->second) : std::string());
        }
        out += '\n';
    }
    return out;
}

} // namespace lzphi
