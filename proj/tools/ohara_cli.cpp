// Command-line front end: evaluate generalized O'Hara energies, compare the
// evaluation routes, run Moebius-transformation experiments, check kernel
// assumptions, sweep coefficients over alpha, and minimize under a length
// constraint. CSV is the canonical output; JSON mirrors it field for field.

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ohara/ohara.hpp"

namespace {

using nlohmann::json;

struct OutputSink {
    std::string path; // empty = stdout
    std::ostream& stream() {
        if (path.empty()) return std::cout;
        if (!file) {
            file = std::make_unique<std::ofstream>(path);
            if (!*file) throw std::runtime_error("cannot open output file: " + path);
        }
        return *file;
    }
    std::unique_ptr<std::ofstream> file;
};

std::vector<double> parse_doubles(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stod(tok));
    }
    return out;
}

// circle[:r] | trefoil[:R,r] | perturbed-circle[:amp,harmonic] |
// ellipse[:a,b] | file:PATH
ohara::Curve parse_curve(const std::string& spec, int n) {
    if (spec.rfind("file:", 0) == 0) {
        int dim = 0;
        const auto pts = ohara::read_curve_points(spec.substr(5), &dim);
        return ohara::reparametrize_by_arclength(pts, dim, n);
    }
    std::string name = spec;
    std::vector<double> args;
    if (const auto colon = spec.find(':'); colon != std::string::npos) {
        name = spec.substr(0, colon);
        args = parse_doubles(spec.substr(colon + 1));
    }
    ohara::CurveParams p;
    if (name == "circle" && !args.empty()) p.radius = args[0];
    if (name == "trefoil" && args.size() >= 2) {
        p.torus_R = args[0];
        p.torus_r = args[1];
    }
    if (name == "perturbed-circle" && args.size() >= 2) {
        p.amplitude = args[0];
        p.harmonic = static_cast<int>(args[1]);
    }
    if (name == "ellipse" && args.size() >= 2) {
        p.a = args[0];
        p.b = args[1];
    }
    return ohara::make_named_curve(name, p, n);
}

// power:ALPHA[:unsafe] | file:PATH
ohara::Kernel parse_kernel(const std::string& spec) {
    if (spec.rfind("power:", 0) == 0) {
        std::string rest = spec.substr(6);
        bool unsafe = false;
        if (const auto colon = rest.find(':'); colon != std::string::npos) {
            unsafe = rest.substr(colon + 1) == "unsafe";
            rest = rest.substr(0, colon);
        }
        const double alpha = std::stod(rest);
        if (unsafe)
            std::cerr << "warning: alpha = " << alpha
                      << " outside [2,3); the knot-energy assumptions may fail\n";
        return ohara::Kernel::power(alpha, unsafe);
    }
    if (spec.rfind("file:", 0) == 0) return ohara::read_kernel_file(spec.substr(5));
    throw std::runtime_error("kernel spec must be power:ALPHA or file:PATH");
}

// inv:cx,cy,cz,rho;scale:S;trans:x,y,z;rot:ax,ay,az,deg  (semicolon-separated)
ohara::MobiusMap parse_map(const std::string& spec, int dim) {
    ohara::MobiusMap map;
    std::stringstream ss(spec);
    std::string factor;
    while (std::getline(ss, factor, ';')) {
        if (factor.empty()) continue;
        const auto colon = factor.find(':');
        if (colon == std::string::npos) throw std::runtime_error("bad map factor: " + factor);
        const std::string kind = factor.substr(0, colon);
        const auto args = parse_doubles(factor.substr(colon + 1));
        if (kind == "inv") {
            if (static_cast<int>(args.size()) != dim + 1)
                throw std::runtime_error("inv: expected dim coordinates plus a radius");
            ohara::Inversion inv;
            inv.center.assign(args.begin(), args.end() - 1);
            inv.radius = args.back();
            map.push(inv);
        } else if (kind == "scale") {
            map.push(ohara::Scaling{args.at(0)});
        } else if (kind == "trans") {
            if (static_cast<int>(args.size()) != dim)
                throw std::runtime_error("trans: expected dim coordinates");
            map.push(ohara::Translation{args});
        } else if (kind == "rot") {
            if (dim != 3 || args.size() != 4)
                throw std::runtime_error("rot: axis-angle rotations are 3D (ax,ay,az,deg)");
            double ax = args[0], ay = args[1], az = args[2];
            const double n = std::sqrt(ax * ax + ay * ay + az * az);
            ax /= n;
            ay /= n;
            az /= n;
            const double th = args[3] * ohara::kPi / 180.0;
            const double c = std::cos(th), s = std::sin(th), v = 1.0 - c;
            ohara::Rotation rot;
            rot.dim = 3;
            rot.matrix = {c + ax * ax * v,      ax * ay * v - az * s, ax * az * v + ay * s,
                          ay * ax * v + az * s, c + ay * ay * v,      ay * az * v - ax * s,
                          az * ax * v - ay * s, az * ay * v + ax * s, c + az * az * v};
            map.push(rot);
        } else {
            throw std::runtime_error("unknown map factor kind: " + kind);
        }
    }
    return map;
}

std::string header_line(const std::string& command, const std::string& canonical_config) {
    std::ostringstream os;
    os << "# ohara-energy " << ohara::kVersion << " command=" << command << " config="
       << std::hex << ohara::fnv1a_hash(canonical_config);
    return os.str();
}

void emit(OutputSink& sink, const std::string& command, const std::string& canonical,
          const std::vector<std::string>& columns, const std::vector<json>& rows,
          const std::string& format) {
    auto& os = sink.stream();
    os << std::setprecision(15);
    if (format == "json") {
        json doc;
        doc["tool"] = std::string("ohara-energy ") + ohara::kVersion;
        doc["command"] = command;
        std::ostringstream hx;
        hx << std::hex << ohara::fnv1a_hash(canonical);
        doc["config"] = hx.str();
        doc["rows"] = rows;
        os << doc.dump(2) << "\n";
        return;
    }
    os << header_line(command, canonical) << "\n";
    for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
    os << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (i) os << ",";
            const auto& v = row.at(columns[i]);
            if (v.is_number_float())
                os << std::setprecision(15) << v.get<double>();
            else if (v.is_null())
                os << "";
            else if (v.is_string()) {
                const auto s = v.get<std::string>();
                if (s.find(',') != std::string::npos)
                    os << '"' << s << '"';
                else
                    os << s;
            }
            else
                os << v;
        }
        os << "\n";
    }
}

json breakdown_row(const ohara::EnergyBreakdown& br, int n, double alpha) {
    json row;
    row["method"] = br.method;
    row["N"] = n;
    row["m"] = br.quad.m;
    row["alpha"] = alpha;
    row["total"] = br.total;
    row["e1"] = br.e1 ? json(*br.e1) : json();
    row["e2"] = br.e2 ? json(*br.e2) : json();
    row["e3"] = br.e3 ? json(*br.e3) : json();
    row["e4"] = br.e4 ? json(*br.e4) : json();
    row["tail"] = br.tail;
    return row;
}

const std::vector<std::string> kBreakdownCols = {"method", "N",  "m",  "alpha", "total",
                                                 "e1",     "e2", "e3", "e4",    "tail"};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized O'Hara knot-energy evaluator"};
    app.require_subcommand(1);

    std::string curve_spec = "circle";
    std::string kernel_spec = "power:2";
    std::string method = "cosine";
    std::string out_format = "csv";
    std::string out_path;
    std::string map_spec;
    std::string angles_out;
    int n = 256;
    int m = 1;
    bool no_correction = false;
    unsigned long seed = 12345;

    auto add_common = [&](CLI::App* sub, bool with_curve = true) {
        if (with_curve)
            sub->add_option("--curve", curve_spec,
                            "circle[:r] | trefoil[:R,r] | perturbed-circle[:amp,harm] | "
                            "ellipse[:a,b] | file:PATH");
        sub->add_option("--kernel", kernel_spec, "power:ALPHA[:unsafe] | file:PATH");
        sub->add_option("--n", n, "sample count (even, >= 16)");
        sub->add_option("--m", m, "diagonal exclusion halfwidth");
        sub->add_flag("--no-correction", no_correction, "disable the diagonal band correction");
        sub->add_option("--out", out_format, "output format: csv | json");
        sub->add_option("--output", out_path, "output file (default stdout)");
        sub->add_option("--seed", seed, "seed recorded in the run config");
    };

    auto* eval_cmd = app.add_subcommand("eval", "evaluate one energy");
    add_common(eval_cmd);
    eval_cmd->add_option("--method", method, "direct | decomp | pv | cosine | combined");
    eval_cmd->add_option("--angles-out", angles_out, "per-pair angle dump CSV path");

    auto* compare_cmd = app.add_subcommand("compare", "all routes across the grid ladder");
    add_common(compare_cmd);

    auto* inv_cmd = app.add_subcommand("invariance", "energy before/after a Moebius map");
    add_common(inv_cmd);
    inv_cmd->add_option("--map", map_spec, "inv:cx,..,rho;scale:S;trans:..;rot:ax,ay,az,deg")
        ->required();

    auto* assum_cmd = app.add_subcommand("assumptions", "kernel assumption report");
    double assum_length = 2.0 * ohara::kPi;
    assum_cmd->add_option("--kernel", kernel_spec, "power:ALPHA[:unsafe] | file:PATH");
    assum_cmd->add_option("--length", assum_length, "curve length L for the (0, L/2] checks");
    assum_cmd->add_option("--out", out_format, "output format: csv | json");
    assum_cmd->add_option("--output", out_path, "output file (default stdout)");

    auto* min_cmd = app.add_subcommand("minimize", "length-constrained descent");
    std::string start_spec = "perturbed-circle:0.05,3";
    std::string trace_path;
    int iters = 200, harmonics = 8;
    double tol = 1e-4, target_length = 2.0 * ohara::kPi;
    min_cmd->add_option("--kernel", kernel_spec, "power:ALPHA[:unsafe] | file:PATH");
    min_cmd->add_option("--start", start_spec, "start curve spec");
    min_cmd->add_option("--iters", iters, "max iterations");
    min_cmd->add_option("--tol", tol, "gradient-norm tolerance");
    min_cmd->add_option("--trace", trace_path, "write the descent trace CSV here");
    min_cmd->add_option("--n", n, "sample count for the objective");
    min_cmd->add_option("--harmonics", harmonics, "retained Fourier harmonics");
    min_cmd->add_option("--length", target_length, "target length");
    min_cmd->add_option("--out", out_format, "output format: csv | json");
    min_cmd->add_option("--output", out_path, "output file (default stdout)");
    min_cmd->add_option("--seed", seed, "seed recorded in the run config");

    auto* sweep_cmd = app.add_subcommand("sweep", "alpha sweep of Theta, tail, and breakdown");
    std::string alphas_spec = "2,2.25,2.5,2.75,2.9";
    add_common(sweep_cmd);
    sweep_cmd->add_option("--alphas", alphas_spec, "comma-separated alpha list in [2,3)");

    CLI11_PARSE(app, argc, argv);

    try {
        OutputSink sink;
        sink.path = out_path;
        ohara::QuadratureSpec quad;
        quad.m = m;
        quad.diagonal_correction = !no_correction;

        std::ostringstream canon;
        canon << curve_spec << "|" << kernel_spec << "|n=" << n << "|m=" << m
              << "|corr=" << (!no_correction) << "|seed=" << seed;

        if (*eval_cmd) {
            const auto kernel = parse_kernel(kernel_spec);
            const auto curve = parse_curve(curve_spec, n);
            canon << "|method=" << method;
            const auto br = ohara::evaluate_energy(method, curve, kernel, quad);
            const double alpha = kernel.is_power_law() ? kernel.alpha()
                                                       : std::nan("");
            emit(sink, "eval", canon.str(), kBreakdownCols, {breakdown_row(br, n, alpha)},
                 out_format);
            if (!angles_out.empty()) {
                std::ofstream af(angles_out);
                if (!af) throw std::runtime_error("cannot open " + angles_out);
                af << std::setprecision(15) << "s1,s2,cos_psi,cos_phi,cos_phi_blend\n";
                const double h = curve.grid_step();
                for (int i = 0; i < curve.n; ++i) {
                    for (int j = i + 1; j < curve.n; ++j) {
                        std::vector<double> df(curve.dim);
                        for (int d = 0; d < curve.dim; ++d)
                            df[d] = curve.pos[static_cast<std::size_t>(i) * curve.dim + d] -
                                    curve.pos[static_cast<std::size_t>(j) * curve.dim + d];
                        ohara::PairGeometry g{
                            df,
                            {curve.tangent(i).begin(), curve.tangent(i).end()},
                            {curve.tangent(j).begin(), curve.tangent(j).end()}};
                        const double cpsi = ohara::cos_psi(g);
                        const double cphi = ohara::cos_phi_algebraic(g);
                        const double th = kernel.theta(g.chord_len());
                        af << i * h << "," << j * h << "," << cpsi << "," << cphi << ","
                           << ohara::cos_phi_blend(cphi, cpsi, th) << "\n";
                    }
                }
            }
        } else if (*compare_cmd) {
            const auto kernel = parse_kernel(kernel_spec);
            const double alpha = kernel.is_power_law() ? kernel.alpha() : std::nan("");
            std::vector<json> rows;
            std::vector<double> dir_vs_cos;
            const std::vector<int> ladder = {128, 256, 512, 1024};
            for (int nn : ladder) {
                const auto curve = parse_curve(curve_spec, nn);
                const auto d = ohara::energy_direct(curve, kernel, quad);
                const auto de = ohara::energy_decomposition(curve, kernel, quad);
                const auto p = ohara::energy_pv(curve, kernel, quad);
                const auto co = ohara::energy_cosine(curve, kernel, quad);
                json row;
                row["N"] = nn;
                row["alpha"] = alpha;
                row["direct"] = d.total;
                row["decomp"] = de.total;
                row["pv"] = p.total;
                row["cosine"] = co.total;
                row["dev_direct_cosine"] = std::abs(d.total - co.total);
                row["dev_decomp_pv"] = std::abs(de.total - p.total);
                row["dev_decomp_cosine"] = std::abs(de.total - co.total);
                dir_vs_cos.push_back(std::abs(d.total - co.total));
                const std::size_t k = dir_vs_cos.size();
                row["order_direct_cosine"] =
                    k >= 2 && dir_vs_cos[k - 1] > 0.0
                        ? json(std::log2(dir_vs_cos[k - 2] / dir_vs_cos[k - 1]))
                        : json();
                rows.push_back(row);
            }
            emit(sink, "compare", canon.str(),
                 {"N", "alpha", "direct", "decomp", "pv", "cosine", "dev_direct_cosine",
                  "dev_decomp_pv", "dev_decomp_cosine", "order_direct_cosine"},
                 rows, out_format);
        } else if (*inv_cmd) {
            const auto kernel = parse_kernel(kernel_spec);
            const auto curve = parse_curve(curve_spec, n);
            const auto map = parse_map(map_spec, curve.dim);
            canon << "|map=" << map_spec;
            const auto before = ohara::energy_cosine(curve, kernel, quad);
            const auto image = ohara::transform_curve(map, curve, n);
            const auto after = ohara::energy_cosine(image, kernel, quad);
            json row;
            row["N"] = n;
            row["alpha"] = kernel.is_power_law() ? json(kernel.alpha()) : json();
            row["energy_before"] = before.total;
            row["energy_after"] = after.total;
            row["rel_deviation"] = std::abs(after.total - before.total) / std::abs(before.total);
            row["normalized_before"] =
                kernel.is_power_law()
                    ? json(std::pow(curve.length, kernel.alpha() - 2.0) * before.total)
                    : json();
            row["normalized_after"] =
                kernel.is_power_law()
                    ? json(std::pow(image.length, kernel.alpha() - 2.0) * after.total)
                    : json();
            emit(sink, "invariance", canon.str(),
                 {"N", "alpha", "energy_before", "energy_after", "rel_deviation",
                  "normalized_before", "normalized_after"},
                 {row}, out_format);
        } else if (*assum_cmd) {
            const auto kernel = parse_kernel(kernel_spec);
            canon.str("");
            canon << kernel_spec << "|L=" << assum_length;
            const auto rep = ohara::check_assumptions(kernel, assum_length);
            auto verdict = [](const ohara::AssumptionVerdict& v) {
                return !v.checked ? std::string("analytic") : (v.passed ? "pass" : "fail");
            };
            std::vector<json> rows;
            auto add = [&](const char* name, const ohara::AssumptionVerdict& v) {
                json row;
                row["assumption"] = name;
                row["verdict"] = verdict(v);
                row["note"] = v.note;
                rows.push_back(row);
            };
            add("A.1", rep.a1);
            add("A.2", rep.a2);
            add("A.3", rep.a3);
            add("A.4", rep.a4);
            add("A.5a", rep.a5a);
            add("A.5b", rep.a5b);
            emit(sink, "assumptions", canon.str(), {"assumption", "verdict", "note"}, rows,
                 out_format);
        } else if (*min_cmd) {
            const auto kernel = parse_kernel(kernel_spec);
            canon.str("");
            canon << kernel_spec << "|start=" << start_spec << "|iters=" << iters
                  << "|tol=" << tol << "|n=" << n << "|K=" << harmonics
                  << "|L=" << target_length << "|seed=" << seed;
            const auto start_curve = parse_curve(start_spec, std::max(n, 256));
            auto start = ohara::FourierCurve::from_curve(start_curve, harmonics);
            ohara::DescentOptions opts;
            opts.max_iterations = iters;
            opts.grad_tol = tol;
            opts.n_samples = n;
            const auto res =
                ohara::minimize_under_length(start, kernel, target_length, opts);
            if (!trace_path.empty()) {
                std::ofstream tf(trace_path);
                if (!tf) throw std::runtime_error("cannot open " + trace_path);
                tf << std::setprecision(15)
                   << "iteration,energy,e3,e4,step,grad_norm,length\n";
                for (const auto& r : res.trace.records)
                    tf << r.iteration << "," << r.energy << "," << r.e3 << "," << r.e4 << ","
                       << r.step << "," << r.grad_norm << "," << r.length << "\n";
            }
            json row;
            row["iterations"] = res.trace.records.size();
            row["status"] = res.trace.status;
            row["final_energy"] = res.trace.records.back().energy;
            row["e4_final_minus_circle"] = res.trace.e4_final_minus_circle;
            row["e4_circle"] = res.trace.e4_circle;
            emit(sink, "minimize", canon.str(),
                 {"iterations", "status", "final_energy", "e4_final_minus_circle", "e4_circle"},
                 {row}, out_format);
        } else if (*sweep_cmd) {
            canon << "|alphas=" << alphas_spec;
            std::vector<json> rows;
            for (double alpha : parse_doubles(alphas_spec)) {
                const auto kernel = ohara::Kernel::power(alpha);
                const auto curve = parse_curve(curve_spec, n);
                const auto br = ohara::energy_cosine(curve, kernel, quad);
                json row = breakdown_row(br, n, alpha);
                row["theta"] = kernel.theta_power_constant();
                rows.push_back(row);
            }
            auto cols = kBreakdownCols;
            cols.push_back("theta");
            emit(sink, "sweep", canon.str(), cols, rows, out_format);
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
