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

// Command implementations behind tools/lzphi. Each command returns an exit
// status and writes diagnostics to the supplied error stream.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "lzphi/error.hpp"
#include "lzphi/relations.hpp"
#include "lzphi/specio.hpp"
#include "lzphi/states.hpp"

namespace lzphi::cli {

enum ExitStatus : int {
    AllSatisfied = 0,
    AnyViolated = 1,
    Inconclusive = 2,
    InputError = 3,
};

/// Exit code of a report set: 1 if anything is Violated, else 2 if anything
/// is Indeterminate or NotApplicable, else 0.
inline ExitStatus exit_status(std::span<const RelationReport> reports) {
    bool inconclusive = false;
    for (const auto &r : reports) {
        if (r.verdict == Verdict::Violated) return AnyViolated;
        if (r.verdict == Verdict::Indeterminate || r.verdict == Verdict::NotApplicable) inconclusive = true;
    }
    return inconclusive ? Inconclusive : AllSatisfied;
}

struct Options {
    ReportFormat format = ReportFormat::Json;
    std::optional<double> tolerance;
    std::optional<int> quad_nodes;
    bool normalize = false;
    std::optional<std::string> output;
};

struct Sweep {
    std::string param; // alpha, n, N, N1, mix:<m1>:<m2>, phase:<m>, abs:<m>
    double from = 0.0;
    double to = 1.0;
    int steps = 2;
    std::optional<std::string> state;
};

/// Reads and parses a spec file and applies flag overrides.
inline SpecDocument load(const std::string &path, const Options &options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read spec file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    SpecDocument doc = parse(text.str(), options.normalize ? std::optional<bool>(true) : std::nullopt);
    if (options.tolerance) {
        if (!(*options.tolerance > 0.0)) throw Error(ErrorCode::InvalidArgument, "--tolerance must be positive");
        doc.settings.tolerance = *options.tolerance;
    }
    if (options.quad_nodes) {
        if (*options.quad_nodes < 4) throw Error(ErrorCode::InvalidArgument, "--quad-nodes must be at least 4");
        doc.settings.quad.phi_nodes = *options.quad_nodes;
        doc.settings.quad.theta_nodes = *options.quad_nodes / 2;
        doc.settings.quad.hermite_nodes = *options.quad_nodes / 2;
    }
    return doc;
}

/// evaluate() for the CLI: a family mismatch becomes a NotApplicable row and a
/// negative Δχ radicand an Indeterminate row instead of aborting the run.
inline RelationReport evaluate_selection(const std::string &name, const State &state, const Selection &sel,
                                         const Settings &settings) {
    RelationReport r;
    try {
        r = evaluate(sel.id, state, sel.params, settings.tolerance, settings.quad);
    } catch (const Error &e) {
        if (e.code() != ErrorCode::FamilyMismatch && e.code() != ErrorCode::NegativeRadicand) throw;
        r = RelationReport{};
        r.relation = sel.id;
        r.params = sel.params;
        r.lhs = std::numeric_limits<double>::quiet_NaN();
        r.rhs = std::numeric_limits<double>::quiet_NaN();
        r.deficit = apply_lz_boundary_form(state, settings.quad);
        r.condition31 = std::abs(r.deficit) <= settings.tolerance;
        r.diagnostics["deficit"] = r.deficit;
        if (e.code() == ErrorCode::FamilyMismatch) {
            r.verdict = Verdict::NotApplicable;
            r.diagnostics["family_mismatch"] = 1.0;
        } else {
            r.verdict = Verdict::Indeterminate;
            r.diagnostics["negative_radicand"] = 1.0;
        }
    }
    r.state_name = name;
    return r;
}

/// One report per (state, selection), states outermost.
inline std::vector<RelationReport> evaluate_document(const SpecDocument &doc) {
    std::vector<RelationReport> out;
    for (const auto &entry : doc.states) {
        const State state = build_state(entry, doc.settings);
        for (const auto &sel : doc.selections) out.push_back(evaluate_selection(entry.name, state, sel, doc.settings));
    }
    return out;
}

inline void write_output(const std::string &text, const Options &options, std::ostream &out) {
    if (!options.output) {
        out << text;
        return;
    }
    std::ofstream file(*options.output, std::ios::binary | std::ios::trunc);
    if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write '" + *options.output + "'");
    file << text;
}

inline ExitStatus cmd_eval(const std::string &path, const Options &options, std::ostream &out = std::cout,
                           std::ostream &err = std::cerr) {
    try {
        const SpecDocument doc = load(path, options);
        const auto reports = evaluate_document(doc);
        write_output(serialize_report(reports, options.format), options, out);
        return exit_status(reports);
    } catch (const Error &e) {
        err << path << (e.line() > 0 ? ":" : ": ") << e.what() << '\n';
        return InputError;
    }
}

/// Plain-text relation catalog.
inline std::string cmd_catalog() {
    std::ostringstream out;
    out << std::left << std::setw(5) << "id" << std::setw(5) << "eq" << std::setw(38) << "families" << std::setw(28)
        << "parameters"
        << "formula\n";
    for (const auto &e : relation_catalog) {
        out << std::setw(5) << to_string(e.id) << std::setw(5) << ("(" + std::to_string(equation_number(e.id)) + ")")
            << std::setw(38) << e.families << std::setw(28) << e.parameters << e.formula << '\n';
    }
    out << "\nR9, R13: excluded: under-specified (integration variable of V(beta) ambiguous; epsilon(phi) never defined)\n";
    return out.str();
}

namespace detail {

struct SweepTarget {
    enum class Kind { Alpha, Level, N, N1, Mix, Phase, Abs } kind;
    int m1 = 0;
    int m2 = 0;
};

inline int parse_index(const std::string &text, const std::string &param) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(text, &used);
        if (used == text.size()) return v;
    } catch (const std::exception &) {
    }
    throw Error(ErrorCode::UnknownKey, "malformed sweep parameter '" + param + "'");
}

inline SweepTarget parse_sweep_param(const std::string &param) {
    using K = SweepTarget::Kind;
    if (param == "alpha") return {K::Alpha};
    if (param == "n") return {K::Level};
    if (param == "N") return {K::N};
    if (param == "N1") return {K::N1};
    const auto colon = param.find(':');
    if (colon != std::string::npos) {
        const std::string head = param.substr(0, colon);
        const std::string rest = param.substr(colon + 1);
        if (head == "phase" || head == "abs") return {head == "phase" ? K::Phase : K::Abs, parse_index(rest, param)};
        if (head == "mix") {
            const auto second = rest.find(':');
            if (second != std::string::npos) {
                return {K::Mix, parse_index(rest.substr(0, second), param), parse_index(rest.substr(second + 1), param)};
            }
        }
    }
    throw Error(ErrorCode::UnknownKey, "unknown sweep parameter '" + param + "'");
}

inline int as_integer(double v, const std::string &param) {
    const double r = std::round(v);
    if (std::abs(v - r) > 1e-9) {
        throw Error(ErrorCode::InvalidArgument, "sweep of '" + param + "' hits the non-integer value " + std::to_string(v));
    }
    return static_cast<int>(r);
}

inline complex unit_phase(complex c) { return std::abs(c) > 0.0 ? c / std::abs(c) : complex(1.0, 0.0); }

// Coefficient edits shared by rotor maps and spherical vectors.
template <class Get, class Set>
void edit_coefficients(const SweepTarget &t, double v, Get get, Set set) {
    using K = SweepTarget::Kind;
    switch (t.kind) {
    case K::Mix:
        set(t.m1, std::cos(v) * unit_phase(get(t.m1)));
        set(t.m2, std::sin(v) * unit_phase(get(t.m2)));
        break;
    case K::Phase: set(t.m1, std::polar(std::abs(get(t.m1)), v)); break;
    case K::Abs: set(t.m1, v * unit_phase(get(t.m1))); break;
    default: break;
    }
}

// Applies one sweep value to a state entry; false when the parameter has no
// meaning for the state's family.
inline bool apply_to_state(const SweepTarget &t, double v, const std::string &param, StateEntry &entry) {
    using K = SweepTarget::Kind;
    if (t.kind == K::Level) {
        auto *p = std::get_if<PendulumSpec>(&entry.spec);
        if (!p) return false;
        p->n = as_integer(v, param);
        return true;
    }
    if (auto *r = std::get_if<RotorSpec>(&entry.spec)) {
        edit_coefficients(
            t, v,
            [&](int m) {
                const auto it = r->c.find(m);
                return it == r->c.end() ? complex{} : it->second;
            },
            [&](int m, complex c) { r->c[m] = c; });
        return true;
    }
    if (auto *s = std::get_if<SphericalSpec>(&entry.spec)) {
        for (const int m : {t.m1, t.m2}) {
            if (std::abs(m) > s->l) {
                throw Error(ErrorCode::IndexRange, "sweep index " + std::to_string(m) + " exceeds l=" + std::to_string(s->l));
            }
        }
        edit_coefficients(
            t, v, [&](int m) { return s->c[static_cast<std::size_t>(m + s->l)]; },
            [&](int m, complex c) { s->c[static_cast<std::size_t>(m + s->l)] = c; });
        return true;
    }
    return false;
}

// Applies one sweep value to a selection; false when it does not apply.
inline bool apply_to_selection(const SweepTarget &t, double v, const std::string &param, Selection &sel) {
    using K = SweepTarget::Kind;
    if (t.kind == K::Alpha && sel.id == RelationId::R8) {
        sel.params.alpha = v;
        return true;
    }
    if ((t.kind == K::N || t.kind == K::N1) && sel.id == RelationId::R12) {
        (t.kind == K::N ? sel.params.N : sel.params.N1) = as_integer(v, param);
        return true;
    }
    return false;
}

} // namespace detail

/// Evaluates a spec once per sweep point. Points may run concurrently; rows
/// come out in sweep order, then state order, then selection order.
inline std::vector<RelationReport> scan_document(const SpecDocument &doc, const Sweep &sweep) {
    using K = detail::SweepTarget::Kind;
    const auto target = detail::parse_sweep_param(sweep.param);
    if (sweep.steps < 1) throw Error(ErrorCode::InvalidArgument, "--steps must be at least 1");
    if (!std::isfinite(sweep.from) || !std::isfinite(sweep.to)) throw Error(ErrorCode::InvalidArgument, "sweep bounds must be finite");

    std::vector<std::size_t> targets;
    for (std::size_t i = 0; i < doc.states.size(); ++i) {
        if (!sweep.state || doc.states[i].name == *sweep.state) targets.push_back(i);
    }
    if (targets.empty()) throw Error(ErrorCode::UnknownKey, "no state named '" + sweep.state.value_or("") + "'");

    const bool state_param = target.kind == K::Level || target.kind == K::Mix || target.kind == K::Phase || target.kind == K::Abs;
    auto point = [&](int i) {
        const double v = sweep.steps == 1 ? sweep.from : sweep.from + (sweep.to - sweep.from) * i / (sweep.steps - 1);
        SpecDocument d = doc;
        if (state_param) {
            for (const auto idx : targets) {
                if (!detail::apply_to_state(target, v, sweep.param, d.states[idx])) {
                    throw Error(ErrorCode::FamilyMismatch,
                                "sweep parameter '" + sweep.param + "' does not apply to state '" + d.states[idx].name + "'");
                }
            }
        } else {
            bool used = false;
            for (auto &sel : d.selections) used = detail::apply_to_selection(target, v, sweep.param, sel) || used;
            if (!used) throw Error(ErrorCode::UnknownKey, "sweep parameter '" + sweep.param + "' matches no selected relation");
            for (const auto &sel : d.selections) validate_params(sel.id, sel.params);
        }
        std::vector<RelationReport> rows;
        for (const auto idx : targets) {
            const State state = build_state(d.states[idx], d.settings);
            for (const auto &sel : d.selections) {
                rows.push_back(evaluate_selection(d.states[idx].name, state, sel, d.settings));
                rows.back().sweep = std::make_pair(sweep.param, v);
            }
        }
        return rows;
    };

    const int workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    std::vector<RelationReport> out;
    for (int start = 0; start < sweep.steps; start += workers) {
        const int stop = std::min(sweep.steps, start + workers);
        std::vector<std::future<std::vector<RelationReport>>> batch;
        for (int i = start; i < stop; ++i) {
            batch.push_back(std::async(workers > 1 ? std::launch::async : std::launch::deferred, point, i));
        }
        for (auto &f : batch) {
            auto rows = f.get();
            out.insert(out.end(), std::make_move_iterator(rows.begin()), std::make_move_iterator(rows.end()));
        }
    }
    return out;
}

inline ExitStatus cmd_scan(const std::string &path, const Sweep &sweep, const Options &options,
                           std::ostream &out = std::cout, std::ostream &err = std::cerr) {
    try {
        const SpecDocument doc = load(path, options);
        const auto reports = scan_document(doc, sweep);
        write_output(serialize_report(reports, options.format), options, out);
        return exit_status(reports);
    } catch (const Error &e) {
        err << path << (e.line() > 0 ? ":" : ": ") << e.what() << '\n';
        return InputError;
    }
}

} // namespace lzphi::cli
