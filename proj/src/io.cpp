/// @file io.cpp

#include "hyperturb/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hyperturb {

std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fields_csv(const Field& field) {
    const Grid& g = field.grid;
    std::ostringstream out;
    out << "# hyperturb fields v1\n";
    out << "x,y,phi,u1,u2,u3,s11,s12,s13,s22,s23,s33,k,y1,y2,y3\n";
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const double* s = field.cell(g.index(i, j));
            out << format_g17(g.x(i)) << ',' << format_g17(g.dim == 2 ? g.y(j) : 0.0);
            for (int v = 0; v < kNumVars; ++v) out << ',' << format_g17(s[v]);
            out << '\n';
        }
    }
    return out.str();
}

void write_fields_csv(const std::string& path, const Field& field) {
    write_text_file(path, fields_csv(field));
}

std::string diagnostics_csv(const std::vector<StepRecord>& log) {
    std::ostringstream out;
    out << "step,time,dt,mass,mom1,mom2,mom3,entropy,max_sigma,clamp_count,"
           "min_h_constrained,constraint_violations\n";
    for (const StepRecord& r : log) {
        out << r.step << ',' << format_g17(r.time) << ',' << format_g17(r.dt) << ','
            << format_g17(r.mass) << ',' << format_g17(r.momentum[0]) << ','
            << format_g17(r.momentum[1]) << ',' << format_g17(r.momentum[2]) << ','
            << format_g17(r.entropy_total) << ',' << format_g17(r.max_sigma) << ','
            << r.clamp_count << ',' << format_g17(r.min_h_constrained) << ','
            << r.constraint_violations << '\n';
    }
    return out.str();
}

namespace {

struct JsonWriter {
    std::ostringstream out;
    bool first = true;

    JsonWriter() { out << "{\n"; }

    void key(const std::string& k) {
        if (!first) out << ",\n";
        first = false;
        out << "  \"" << k << "\": ";
    }
    void field(const std::string& k, double v) {
        key(k);
        out << format_g17(v);
    }
    void field(const std::string& k, long v) {
        key(k);
        out << v;
    }
    void field(const std::string& k, bool v) {
        key(k);
        out << (v ? "true" : "false");
    }
    void field(const std::string& k, const std::string& v) {
        key(k);
        out << '"' << v << '"';
    }
    void raw(const std::string& k, const std::string& v) {
        key(k);
        out << v;
    }
    std::string finish() {
        out << "\n}\n";
        return out.str();
    }
};

}  // namespace

std::string run_report_json(const RunResult& result, bool aborted, const std::string& abort_reason,
                            long abort_step) {
    JsonWriter w;
    w.field("aborted", aborted);
    if (aborted) {
        w.field("abort_reason", abort_reason);
        w.field("abort_step", abort_step);
    }
    w.field("steps", result.total_steps);
    w.field("clamp_count", result.clamp_count);
    if (!result.log.empty()) {
        const StepRecord& last = result.log.back();
        const StepRecord& head = result.log.front();
        w.field("t_final", last.time);
        w.field("mass_initial", head.mass);
        w.field("mass_final", last.mass);
        w.field("mass_drift", std::abs(last.mass - head.mass));
        w.field("entropy_initial", head.entropy_total);
        w.field("entropy_final", last.entropy_total);
        w.field("max_sigma_final", last.max_sigma);
    }
    w.field("worst_entropy_dip", result.worst_entropy_dip);
    w.field("min_h_constrained", result.min_h_constrained);
    w.field("constraint_violations", result.constraint_violations);
    w.field("snapshots", static_cast<long>(result.snapshots.size()));
    return w.finish();
}

std::string sweep_report_json(const ConvergenceReport& report) {
    std::ostringstream rows;
    rows << "[\n";
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const SweepRow& r = report.rows[i];
        rows << "    {\"eps\": " << format_g17(r.eps) << ", \"core_m0\": " << format_g17(r.core_m0)
             << ", \"core_m1\": " << format_g17(r.core_m1)
             << ", \"relax_m0\": " << format_g17(r.relax_m0)
             << ", \"relax_m1\": " << format_g17(r.relax_m1) << ", \"steps\": " << r.steps
             << ", \"clamp_count\": " << r.clamp_count
             << ", \"worst_entropy_dip\": " << format_g17(r.worst_entropy_dip)
             << ", \"min_h_constrained\": " << format_g17(r.min_h_constrained)
             << ", \"constraint_violations\": " << r.constraint_violations << "}"
             << (i + 1 < report.rows.size() ? "," : "") << "\n";
    }
    rows << "  ]";

    JsonWriter w;
    w.raw("rows", rows.str());
    w.field("core_slope_m0", report.core_slope_m0);
    w.field("core_slope_m1", report.core_slope_m1);
    w.field("relax_slope_m0", report.relax_slope_m0);
    w.field("core_slope_threshold", report.core_slope_threshold);
    w.field("pass_core_slope", report.pass_core_slope);
    w.field("pass_relax_monotone", report.pass_relax_monotone);
    w.field("pass", report.pass());
    return w.finish();
}

std::string check_report_json(const SweepReport& report) {
    JsonWriter w;
    w.field("n_samples", report.n_samples);
    w.field("seed", static_cast<long>(report.seed));
    w.field("symmetry_violations", report.symmetry_violations);
    w.field("spectrum_violations", report.spectrum_violations);
    w.field("h_violations", report.h_violations);
    w.field("pd_violations", report.pd_violations);
    w.field("concavity_violations", report.concavity_violations);
    w.field("constraint_satisfied", report.constraint_satisfied);
    w.field("double_violators", report.double_violators);
    w.field("double_violators_negative_mineig", report.double_violators_negative_mineig);
    w.field("h_source_sign_mismatches", report.h_source_sign_mismatches);
    w.field("max_rel_asymmetry", report.max_rel_asymmetry);
    w.field("max_spectrum_asymmetry", report.max_spectrum_asymmetry);
    w.field("min_h_constrained", report.min_h_constrained);
    w.field("min_mineig_constrained", report.min_mineig_constrained);
    w.field("max_concavity_eig", report.max_concavity_eig);
    w.field("pass", report.pass());
    return w.finish();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string fnv1a64_hex(const std::string& bytes) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

}  // namespace hyperturb
