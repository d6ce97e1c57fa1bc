#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ssm/errors.hpp"
#include "ssm/singular.hpp"
#include "ssm/solutions.hpp"
#include "ssm/surface.hpp"

namespace ssm {

// ---------------------------------------------------------------------------
// Formatting helpers
// ---------------------------------------------------------------------------

namespace detail {

/// Full-precision, locale-independent double formatting for data outputs.
inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Short display formatting for header fields.
inline std::string fmt_short(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

inline std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 8);
    for (const char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", ch);
                    out += buf;
                } else {
                    out += ch;
                }
        }
    }
    return out;
}

/// JSON number token: finite values print full precision, non-finite null.
inline std::string json_number(double v) {
    if (!std::isfinite(v)) return "null";
    return fmt17(v);
}

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return s.substr(b, e - b);
}

inline bool parse_double_strict(const std::string& text, double* out) {
    if (text.empty()) return false;
    const char* begin = text.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end != begin + text.size()) return false;
    *out = v;
    return true;
}

inline char axis_tag(const Vec3& u) {
    auto is = [&](double x, double y, double z) {
        return std::fabs(u.x - x) < 1e-12 && std::fabs(u.y - y) < 1e-12 &&
               std::fabs(u.z - z) < 1e-12;
    };
    if (is(1, 0, 0)) return 'x';
    if (is(0, 1, 0)) return 'y';
    if (is(0, 0, 1)) return 'z';
    return '?';
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Spec files
// ---------------------------------------------------------------------------

/// A parsed target description: either one of the ten solution families or a
/// utility surface ("plane", "scherk") useful for meshes and curvature
/// experiments but not part of the certified catalog.
struct TargetSpec {
    bool is_utility = false;
    std::string utility;
    SolutionSpec spec;
};

/// Parse the flat key=value spec format.  '#' starts a comment, blank lines
/// are skipped, every error message carries <origin>:<line>.
inline TargetSpec parse_spec_text(const std::string& text, const std::string& origin) {
    TargetSpec ts;
    bool family_seen = false;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = detail::trim(raw);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        std::ostringstream where;
        where << origin << ":" << lineno;
        if (eq == std::string::npos)
            throw ParseError(where.str() + ": expected key=value, got '" + line + "'");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (key.empty()) throw ParseError(where.str() + ": empty key");
        if (value.empty()) throw ParseError(where.str() + ": empty value for key '" + key + "'");
        if (key == "family") {
            if (family_seen) throw ParseError(where.str() + ": duplicate key 'family'");
            family_seen = true;
            if (const auto fam = family_from_name(value)) {
                ts.spec.family = *fam;
            } else if (value == "plane" || value == "scherk") {
                ts.is_utility = true;
                ts.utility = value;
            } else {
                throw ParseError(where.str() + ": unknown family '" + value + "'");
            }
            continue;
        }
        if (key == "id") {
            if (!ts.spec.id.empty()) throw ParseError(where.str() + ": duplicate key 'id'");
            ts.spec.id = value;
            continue;
        }
        double num = 0.0;
        if (!detail::parse_double_strict(value, &num))
            throw ParseError(where.str() + ": value of '" + key + "' is not a number: '" +
                             value + "'");
        if (ts.spec.params.count(key))
            throw ParseError(where.str() + ": duplicate key '" + key + "'");
        ts.spec.params[key] = num;
    }
    if (!family_seen) throw ParseError(origin + ": missing required key 'family'");
    return ts;
}

inline TargetSpec parse_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open spec file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_spec_text(buf.str(), path);
}

// ---------------------------------------------------------------------------
// Utility surfaces and target building
// ---------------------------------------------------------------------------

namespace detail {

inline void check_utility_keys(const TargetSpec& ts, std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : ts.spec.params) {
        (void)value;
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) {
                ok = true;
                break;
            }
        if (!ok)
            throw BadParam("unknown parameter '" + key + "' for utility surface '" + ts.utility +
                           "'");
    }
}

}  // namespace detail

/// Materialize a parsed target.  Utility surfaces default to the Levi-Civita
/// connection; whether they satisfy any residual is up to the caller.
inline BuildResult build_from_target(const TargetSpec& ts) {
    if (!ts.is_utility) return build_target(ts.spec);
    const SolutionSpec& spec = ts.spec;
    const std::string id = spec.id.empty() ? ts.utility : spec.id;
    if (ts.utility == "plane") {
        detail::check_utility_keys(
            ts, {"f0", "f1", "g0", "g1", "alpha", "s1_lo", "s1_hi", "s2_lo", "s2_hi"});
        const double alpha = detail::take_alpha(spec, 1.0);
        const Rect r = detail::hint_rect(spec, Rect{{1.0, 2.0}, {0.0, 1.0}});
        TranslationSurface S = make_surface(
            SurfaceType::TypeZ,
            make_linear(detail::take_param(spec, "f0", 1.0), detail::take_param(spec, "f1", 0.0)),
            make_linear(detail::take_param(spec, "g0", 0.0), detail::take_param(spec, "g1", 0.0)),
            r, {}, id);
        return {std::move(S), ConnectionKind::LeviCivita, alpha, alpha, 'x',
                Vec3{1.0, 0.0, 0.0}, false, ""};
    }
    if (ts.utility == "scherk") {
        detail::check_utility_keys(ts, {"alpha", "s1_lo", "s1_hi", "s2_lo", "s2_hi"});
        const double alpha = detail::take_alpha(spec, 1.0);
        const Rect r = detail::hint_rect(spec, Rect{{-0.6, 0.6}, {-0.6, 0.6}});
        TranslationSurface S = make_surface(SurfaceType::TypeZ, make_log_cos_scaled(-1.0),
                                            make_log_cos_scaled(1.0), r, {}, id);
        return {std::move(S), ConnectionKind::LeviCivita, alpha, alpha, 'z',
                Vec3{0.0, 0.0, 1.0}, false, ""};
    }
    throw BadParam("unknown utility surface '" + ts.utility + "'");
}

// ---------------------------------------------------------------------------
// Verification sweep
// ---------------------------------------------------------------------------

inline constexpr int kMaxRecordedFailures = 64;

struct VerifyFailure {
    double s1 = 0.0;
    double s2 = 0.0;
    double residual = 0.0;  // NaN when evaluation threw
    std::string error;      // empty for plain tolerance failures
};

struct VerifyReport {
    std::string surface_id;
    ConnectionKind connection = ConnectionKind::LeviCivita;
    double alpha = 1.0;
    char u_axis = '?';
    int nu = 0, nv = 0;
    double tol = 0.0;
    double max_residual = 0.0;
    double mean_residual = 0.0;
    int failure_count = 0;
    std::vector<VerifyFailure> failures;  // first kMaxRecordedFailures only
    bool pass = false;
    std::string note;
};

/// Evaluate |2H - a <xi,u>/<p,u>| on an inclusive nu x nv parameter grid.
/// Evaluation errors (halfspace violations, domain issues) are recorded as
/// failures rather than aborting the sweep.  PASS means every point
/// evaluated and stayed within tol.
inline VerifyReport run_verify(const TranslationSurface& S, const SingularConfig& cfg, int nu,
                               int nv, double tol) {
    if (nu < 2 || nv < 2) throw BadParam("verification grid must be at least 2x2");
    detail::validate_singular_config(cfg);
    VerifyReport rep;
    rep.surface_id = S.id();
    rep.connection = cfg.connection;
    rep.alpha = cfg.alpha;
    rep.u_axis = detail::axis_tag(cfg.u);
    rep.nu = nu;
    rep.nv = nv;
    rep.tol = tol;
    const Rect dom = S.domain();
    double sum = 0.0;
    long finite_points = 0;
    auto record = [&rep](double s1, double s2, double r, std::string err) {
        ++rep.failure_count;
        if (static_cast<int>(rep.failures.size()) < kMaxRecordedFailures)
            rep.failures.push_back({s1, s2, r, std::move(err)});
    };
    for (int i = 0; i < nu; ++i) {
        const double s1 = grid_coordinate(dom.s1, i, nu);
        for (int j = 0; j < nv; ++j) {
            const double s2 = grid_coordinate(dom.s2, j, nv);
            try {
                const ResidualReport rr = surface_residual(S, cfg, s1, s2);
                const double r = std::fabs(rr.residual);
                if (std::isfinite(r)) {
                    sum += r;
                    ++finite_points;
                    rep.max_residual = std::max(rep.max_residual, r);
                    if (r > tol) record(s1, s2, r, "");
                } else {
                    record(s1, s2, r, "residual is not finite");
                }
            } catch (const Error& e) {
                record(s1, s2, std::numeric_limits<double>::quiet_NaN(), e.what());
            }
        }
    }
    rep.mean_residual = finite_points > 0 ? sum / static_cast<double>(finite_points) : 0.0;
    rep.pass = rep.failure_count == 0;
    return rep;
}

inline std::string render_verify_text(const VerifyReport& rep) {
    std::ostringstream os;
    os << "surface: " << rep.surface_id << "\n";
    os << "connection: " << to_string(rep.connection) << "\n";
    os << "alpha: " << detail::fmt_short(rep.alpha) << "\n";
    os << "u: " << rep.u_axis << "\n";
    os << "grid: " << rep.nu << "x" << rep.nv << "\n";
    os << "tol: " << detail::fmt_short(rep.tol) << "\n";
    os << "max_residual: " << detail::fmt17(rep.max_residual) << "\n";
    os << "mean_residual: " << detail::fmt17(rep.mean_residual) << "\n";
    os << "failures: " << rep.failure_count << "\n";
    for (const VerifyFailure& f : rep.failures) {
        os << "  at (" << detail::fmt17(f.s1) << ", " << detail::fmt17(f.s2) << "): ";
        if (f.error.empty())
            os << "residual " << detail::fmt17(f.residual) << "\n";
        else
            os << f.error << "\n";
    }
    if (rep.failure_count > static_cast<int>(rep.failures.size()))
        os << "  ... and " << rep.failure_count - static_cast<int>(rep.failures.size())
           << " more\n";
    if (!rep.note.empty()) os << "note: " << rep.note << "\n";
    os << "status: " << (rep.pass ? "PASS" : "FAIL") << "\n";
    return os.str();
}

inline std::string render_verify_json(const VerifyReport& rep) {
    std::ostringstream os;
    os << "{\n";
    os << "  \"surface\": \"" << detail::json_escape(rep.surface_id) << "\",\n";
    os << "  \"connection\": \"" << to_string(rep.connection) << "\",\n";
    os << "  \"alpha\": " << detail::json_number(rep.alpha) << ",\n";
    os << "  \"u\": \"" << rep.u_axis << "\",\n";
    os << "  \"grid\": [" << rep.nu << ", " << rep.nv << "],\n";
    os << "  \"tol\": " << detail::json_number(rep.tol) << ",\n";
    os << "  \"max_residual\": " << detail::json_number(rep.max_residual) << ",\n";
    os << "  \"mean_residual\": " << detail::json_number(rep.mean_residual) << ",\n";
    os << "  \"failure_count\": " << rep.failure_count << ",\n";
    os << "  \"failures\": [";
    for (std::size_t i = 0; i < rep.failures.size(); ++i) {
        const VerifyFailure& f = rep.failures[i];
        os << (i == 0 ? "\n" : ",\n");
        os << "    {\"s1\": " << detail::json_number(f.s1) << ", \"s2\": "
           << detail::json_number(f.s2) << ", \"residual\": " << detail::json_number(f.residual)
           << ", \"error\": \"" << detail::json_escape(f.error) << "\"}";
    }
    os << (rep.failures.empty() ? "],\n" : "\n  ],\n");
    if (!rep.note.empty()) os << "  \"note\": \"" << detail::json_escape(rep.note) << "\",\n";
    os << "  \"status\": \"" << (rep.pass ? "PASS" : "FAIL") << "\"\n";
    os << "}\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// Mesh and profile writers
// ---------------------------------------------------------------------------

inline void write_obj(const Mesh& m, std::ostream& os) {
    for (const MeshVertex& v : m.vertices)
        os << "v " << detail::fmt17(v.pos.x) << " " << detail::fmt17(v.pos.y) << " "
           << detail::fmt17(v.pos.z) << "\n";
    for (const auto& t : m.triangles)
        os << "f " << t[0] + 1 << " " << t[1] + 1 << " " << t[2] + 1 << "\n";
}

inline void write_mesh_csv(const Mesh& m, std::ostream& os) {
    os << "x,y,z\n";
    for (const MeshVertex& v : m.vertices)
        os << detail::fmt17(v.pos.x) << "," << detail::fmt17(v.pos.y) << ","
           << detail::fmt17(v.pos.z) << "\n";
}

inline void write_obj_file(const Mesh& m, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open '" + path + "' for writing");
    write_obj(m, os);
    if (!os) throw IoError("failed while writing '" + path + "'");
}

inline void write_mesh_csv_file(const Mesh& m, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open '" + path + "' for writing");
    write_mesh_csv(m, os);
    if (!os) throw IoError("failed while writing '" + path + "'");
}

/// Sample a profile build uniformly over its sampling window and emit
/// s,f,df,d2f rows plus the defect footer.  Returns the measured max defect.
inline double write_solve_csv(const ProfileBuild& pb, int samples, std::ostream& os) {
    if (samples < 2) throw BadParam("need at least 2 samples");
    os << "s,f,df,d2f\n";
    const Interval w = pb.sample_domain;
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double s = w.lo + w.width() * i / (samples - 1.0);
        const ScalarJet j = eval_jet(pb.profile, s, 2);
        worst = std::max(worst, pb.defect(s));
        os << detail::fmt17(s) << "," << detail::fmt17(j.value) << "," << detail::fmt17(j.d1)
           << "," << detail::fmt17(j.d2) << "\n";
    }
    os << "# max_defect=" << detail::fmt17(worst) << "\n";
    return worst;
}

// ---------------------------------------------------------------------------
// Catalog rendering
// ---------------------------------------------------------------------------

namespace detail {

inline std::string render_defaults_inline(const SolutionSpec& spec) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, value] : spec.params) {
        if (!first) os << " ";
        first = false;
        os << key << "=" << fmt_short(value);
    }
    if (!first) os << " ";
    os << "sign=" << (spec.sign > 0 ? "+1" : "-1");
    return os.str();
}

}  // namespace detail

inline std::string render_catalog_text() {
    const auto& entries = solution_catalog();
    std::ostringstream os;
    os << "catalog: " << entries.size() << " families\n";
    for (const CatalogEntry& e : entries) {
        os << "\n";
        os << "family: " << e.name << "\n";
        os << "  summary: " << e.summary << "\n";
        os << "  connection: " << to_string(e.connection) << "\n";
        os << "  u: " << e.u_axis << "\n";
        os << "  verify_alpha: " << detail::fmt_short(e.verify_alpha) << "\n";
        os << "  constraints: " << e.constraints << "\n";
        os << "  defaults: " << detail::render_defaults_inline(e.defaults) << "\n";
    }
    return os.str();
}

inline std::string render_catalog_json() {
    const auto& entries = solution_catalog();
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const CatalogEntry& e = entries[i];
        os << (i == 0 ? "\n" : ",\n");
        os << "  {\n";
        os << "    \"family\": \"" << e.name << "\",\n";
        os << "    \"summary\": \"" << detail::json_escape(e.summary) << "\",\n";
        os << "    \"constraints\": \"" << detail::json_escape(e.constraints) << "\",\n";
        os << "    \"connection\": \"" << to_string(e.connection) << "\",\n";
        os << "    \"u\": \"" << e.u_axis << "\",\n";
        os << "    \"verify_alpha\": " << detail::json_number(e.verify_alpha) << ",\n";
        os << "    \"sign\": " << e.defaults.sign << ",\n";
        os << "    \"defaults\": {";
        bool first = true;
        for (const auto& [key, value] : e.defaults.params) {
            os << (first ? "" : ", ");
            first = false;
            os << "\"" << key << "\": " << detail::json_number(value);
        }
        os << "}\n  }";
    }
    os << "\n]\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// Subcommand argument parsing
// ---------------------------------------------------------------------------

inline ConnectionKind parse_connection(const std::string& name) {
    if (name == "levi") return ConnectionKind::LeviCivita;
    if (name == "nabla") return ConnectionKind::SemiSymMetric;
    if (name == "d") return ConnectionKind::SemiSymNonMetric;
    throw ParseError("--connection must be one of levi, nabla, d (got '" + name + "')");
}

inline char parse_axis_name(const std::string& name) {
    if (name == "x" || name == "y" || name == "z") return name[0];
    throw ParseError("--u must be one of x, y, z (got '" + name + "')");
}

inline std::pair<int, int> parse_grid(const std::string& text) {
    const std::size_t x = text.find('x');
    auto bad = [&] { return ParseError("--grid must look like 32x32 (got '" + text + "')"); };
    if (x == std::string::npos || x == 0 || x + 1 >= text.size()) throw bad();
    auto parse_int = [&](const std::string& part) {
        if (part.empty()) throw bad();
        const char* begin = part.c_str();
        char* end = nullptr;
        const long v = std::strtol(begin, &end, 10);
        if (end != begin + part.size()) throw bad();
        return v;
    };
    const long nu = parse_int(text.substr(0, x));
    const long nv = parse_int(text.substr(x + 1));
    if (nu < 2 || nv < 2 || nu > 2048 || nv > 2048)
        throw ParseError("--grid sides must be between 2 and 2048 (got '" + text + "')");
    return {static_cast<int>(nu), static_cast<int>(nv)};
}

inline std::pair<double, double> parse_range(const std::string& text) {
    const std::size_t colon = text.find(':');
    if (colon == std::string::npos)
        throw ParseError("--range must look like A:B (got '" + text + "')");
    double a = 0.0, b = 0.0;
    if (!detail::parse_double_strict(detail::trim(text.substr(0, colon)), &a) ||
        !detail::parse_double_strict(detail::trim(text.substr(colon + 1)), &b))
        throw ParseError("--range must look like A:B with numeric bounds (got '" + text + "')");
    if (!(a < b)) throw ParseError("--range must satisfy A < B (got '" + text + "')");
    return {a, b};
}

inline std::pair<std::string, double> parse_param_assignment(const std::string& text) {
    const std::size_t eq = text.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ParseError("--param must look like key=value (got '" + text + "')");
    const std::string key = detail::trim(text.substr(0, eq));
    double v = 0.0;
    if (!detail::parse_double_strict(detail::trim(text.substr(eq + 1)), &v))
        throw ParseError("--param value for '" + key + "' is not a number (got '" + text + "')");
    return {key, v};
}

/// Map a requested sample range onto family parameters: integration windows
/// for tabulated families, radicand ranges for antiderivative families, a
/// covering half-width for turning-point families.  Explicit --param values
/// win over the mapping.
inline void apply_range(SolutionSpec& spec, double a, double b) {
    auto set_if_absent = [&spec](const char* k, double v) {
        if (!detail::has_param(spec, k)) spec.params[k] = v;
    };
    switch (spec.family) {
        case SolutionFamily::Thm1Abel:
        case SolutionFamily::Thm2Abel:
            set_if_absent("x0", a);
            set_if_absent("x_end", b);
            break;
        case SolutionFamily::Thm3Autonomous:
            set_if_absent("z0", a);
            set_if_absent("z_end", b);
            break;
        case SolutionFamily::Thm4Quad:
        case SolutionFamily::Thm5Quad:
            set_if_absent("x_lo", a);
            set_if_absent("x_hi", b);
            return;  // the sampling window is the shrunk profile interior
        case SolutionFamily::Thm3EmdenFowler:
        case SolutionFamily::Thm6Quad:
            set_if_absent("half_width",
                          std::max(std::fabs(a), std::fabs(b)) * (1.0 + 1e-6) + 1e-9);
            break;
        default:
            break;
    }
    set_if_absent("range_lo", a);
    set_if_absent("range_hi", b);
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

struct VerifyOptions {
    std::string spec_path;
    std::optional<std::string> connection;  // levi | nabla | d; family default otherwise
    std::optional<double> alpha;            // family verify exponent otherwise
    std::optional<std::string> u;           // x | y | z; family default otherwise
    std::string grid = "32x32";
    double tol = 1e-6;
    bool json = false;
};

inline int cmd_verify(const VerifyOptions& opt, std::ostream& out) {
    const TargetSpec ts = parse_spec_file(opt.spec_path);
    BuildResult b = build_from_target(ts);
    SingularConfig cfg;
    cfg.connection = opt.connection ? parse_connection(*opt.connection) : b.connection;
    cfg.alpha = opt.alpha ? *opt.alpha : b.verify_alpha;
    cfg.u = axis_direction(opt.u ? parse_axis_name(*opt.u) : b.u_axis);
    const auto [nu, nv] = parse_grid(opt.grid);
    VerifyReport rep = run_verify(b.surface, cfg, nu, nv, opt.tol);
    rep.note = b.note;
    out << (opt.json ? render_verify_json(rep) : render_verify_text(rep));
    return rep.pass ? 0 : 1;
}

struct MeshOptions {
    std::string spec_path;
    std::string out_path;
    std::string format = "obj";
    std::string grid = "32x32";
};

inline int cmd_mesh(const MeshOptions& opt, std::ostream& out) {
    const TargetSpec ts = parse_spec_file(opt.spec_path);
    const BuildResult b = build_from_target(ts);
    const auto [nu, nv] = parse_grid(opt.grid);
    const Mesh m = make_mesh(b.surface, nu, nv);
    if (opt.format == "obj")
        write_obj_file(m, opt.out_path);
    else if (opt.format == "csv")
        write_mesh_csv_file(m, opt.out_path);
    else
        throw ParseError("--format must be obj or csv (got '" + opt.format + "')");
    out << "wrote " << opt.out_path << " (" << m.vertices.size() << " vertices, "
        << m.triangles.size() << " triangles)\n";
    return 0;
}

struct SolveOptions {
    std::string family;
    std::vector<std::string> params;  // key=value assignments
    std::string range;                // "A:B", empty when absent
    std::optional<double> rtol;
    std::string out_path;
};

inline int cmd_solve(const SolveOptions& opt, std::ostream& out) {
    const auto fam = family_from_name(opt.family);
    if (!fam)
        throw ParseError("unknown family '" + opt.family +
                         "' (run the catalog subcommand for the list)");
    SolutionSpec spec;
    spec.family = *fam;
    for (const std::string& kv : opt.params) {
        const auto [key, value] = parse_param_assignment(kv);
        spec.params[key] = value;
    }
    if (opt.rtol) spec.params["rtol"] = *opt.rtol;
    if (!opt.range.empty()) {
        const auto [a, b] = parse_range(opt.range);
        apply_range(spec, a, b);
    }
    const ProfileBuild pb = build_profile(spec);
    std::ofstream os(opt.out_path);
    if (!os) throw IoError("cannot open '" + opt.out_path + "' for writing");
    const int samples = 201;
    const double worst = write_solve_csv(pb, samples, os);
    if (!os) throw IoError("failed while writing '" + opt.out_path + "'");
    out << "family: " << family_name(spec.family) << "\n";
    out << "samples: " << samples << "\n";
    out << "window: [" << detail::fmt_short(pb.sample_domain.lo) << ", "
        << detail::fmt_short(pb.sample_domain.hi) << "]\n";
    out << "defect_kind: " << pb.defect_kind << "\n";
    out << "max_defect: " << detail::fmt17(worst) << "\n";
    out << "wrote: " << opt.out_path << "\n";
    return 0;
}

inline int cmd_catalog(bool json, std::ostream& out) {
    out << (json ? render_catalog_json() : render_catalog_text());
    return 0;
}

}  // namespace ssm
