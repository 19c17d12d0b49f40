#include "kwidth/experiment.hpp"

#include "kwidth/ect1d.hpp"
#include "kwidth/elliptic2d.hpp"
#include "kwidth/spectral1d.hpp"
#include "kwidth/symbols.hpp"
#include "kwidth/widths.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>

namespace kwidth::experiment {

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& why) {
    throw Error(ErrorKind::InvalidConfig, "field '" + field + "': " + why);
}

io::CsvTable spectrum_table(const Eigen::VectorXd& values) {
    io::CsvTable t{{"j", "lambda"}, {}};
    for (Eigen::Index j = 0; j < values.size(); ++j) t.rows.push_back({std::to_string(j + 1), io::format_double(values(j))});
    return t;
}

// x,y,value in row-major node order
io::CsvTable field_table(const elliptic::RectGrid& grid, const Eigen::VectorXd& u) {
    io::CsvTable t{{"x", "y", "value"}, {}};
    for (int j = 0; j < grid.m(); ++j) {
        for (int i = 0; i < grid.m(); ++i) {
            t.rows.push_back({io::format_double(grid.coord(i)), io::format_double(grid.coord(j)),
                              io::format_double(u(grid.index(i, j)))});
        }
    }
    return t;
}

std::vector<int> int_list(const io::Json& j, const std::string& field) {
    std::vector<int> out;
    if (j.is_number_integer()) {
        out.push_back(j.get<int>());
    } else if (j.is_array()) {
        for (const auto& v : j) {
            if (!v.is_number_integer()) bad(field, "expected integers");
            out.push_back(v.get<int>());
        }
    } else if (j.is_string()) {
        try {
            out = parse_int_list(j.get<std::string>());
        } catch (const Error& e) {
            bad(field, e.what());
        }
    } else {
        bad(field, "expected an integer or a list of integers");
    }
    return out;
}

std::string text_field(const io::Json& j, const std::string& field) {
    if (!j.is_string()) bad(field, "expected a string");
    return j.get<std::string>();
}

Polynomial2 default_symbol(int p) {
    const Polynomial2 laplace = Polynomial2::parse("2,0:1 0,2:1");
    Polynomial2 s = laplace;
    for (int k = 1; k < p; ++k) s = s * laplace;
    return s;
}

Polynomial2 symbol_of(const ExperimentConfig& c) {
    if (!c.symbol) return default_symbol(*c.p);
    try {
        return Polynomial2::parse(*c.symbol);
    } catch (const Error& e) {
        bad("symbol", e.what());
    }
}

void require(bool present, const std::string& field) {
    if (!present) bad(field, "required for this experiment but missing");
}

void require_single_grid(const ExperimentConfig& c) {
    require(!c.grid.empty(), "grid");
    if (c.grid.size() != 1) bad("grid", "expects a single value");
}

void require_2d_grids(const ExperimentConfig& c, int p) {
    require(!c.grid.empty(), "grid");
    for (int m : c.grid) {
        if (m % 2 == 0 || m < 2 * p + 3) {
            bad("grid", "2D grids must be odd and >= 2p+3, got " + std::to_string(m));
        }
    }
}

void require_p(const ExperimentConfig& c, int max_p) {
    require(c.p.has_value(), "p");
    if (*c.p < 1 || *c.p > max_p) bad("p", "must lie in [1, " + std::to_string(max_p) + "]");
}

void require_N(const ExperimentConfig& c) {
    require(!c.N.empty(), "N");
    for (int n : c.N) {
        if (n < 0) bad("N", "must be nonnegative");
    }
}

double max_relative(const std::vector<double>& x, const std::vector<double>& ref) {
    double worst = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) worst = std::max(worst, std::abs(x[i] - ref[i]) / std::abs(ref[i]));
    return worst;
}

ect::WeightSystem random_weights(std::uint64_t seed, int order, std::size_t n_quad) {
    CounterRng rng(seed);
    std::vector<std::function<double(double)>> rho;
    for (int k = 0; k < order; ++k) {
        const double c = 0.5 + 1.5 * rng.uniform();
        const double a = rng.uniform() - 0.5;
        const double w = 1.0 + 3.0 * rng.uniform();
        const double phase = 2.0 * std::numbers::pi * rng.uniform();
        rho.emplace_back([=](double t) { return c * std::exp(a * std::sin(w * t + phase)); });
    }
    return ect::WeightSystem::from_functions(Interval(0.0, 1.0), n_quad, rho);
}

ect::WeightSystem weights_from_file(const std::string& path) {
    const io::CsvTable t = io::read_csv(path);
    if (t.header.size() < 2 || t.header[0] != "t") {
        throw Error(ErrorKind::InvalidConfig, "weights_file needs a header t,rho_1,...");
    }
    if (t.rows.size() < 2) throw Error(ErrorKind::InvalidConfig, "weights_file needs at least two rows");
    std::vector<std::vector<double>> w(t.header.size() - 1);
    std::vector<double> nodes;
    for (const auto& row : t.rows) {
        nodes.push_back(io::parse_double(row[0]));
        for (std::size_t k = 1; k < row.size(); ++k) w[k - 1].push_back(io::parse_double(row[k]));
    }
    const double h = (nodes.back() - nodes.front()) / static_cast<double>(nodes.size() - 1);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (std::abs(nodes[i] - (nodes.front() + static_cast<double>(i) * h)) > 1e-9 * std::max(1.0, std::abs(h))) {
            throw Error(ErrorKind::InvalidConfig, "weights_file nodes must be uniform");
        }
    }
    return ect::WeightSystem(Interval(nodes.front(), nodes.back()), std::move(w));
}

RunResult run_ect(const ExperimentConfig& c) {
    const auto n_quad = static_cast<std::size_t>(c.grid.front());
    const ect::WeightSystem weights =
        c.weights_file ? weights_from_file(*c.weights_file) : random_weights(*c.seed, *c.p, n_quad);
    const ect::EctBasis basis = ect::build_ect(weights);
    const ect::WeightSystem recovered = ect::recover_weights(basis);

    double roundtrip = 0.0;
    for (std::size_t k = 0; k < weights.order(); ++k) {
        roundtrip = std::max(roundtrip, max_relative(recovered.weight(k), weights.weight(k)));
    }
    // The differentiation route against the product formula, on the nodes it covers.
    double wronskian = 0.0;
    for (std::size_t k = 1; k <= weights.order(); ++k) {
        const SampledFunction w = ect::wronskian_numeric(basis.basis, k);
        const SampledFunction& exact = basis.wronskians[k - 1];
        const auto shift = static_cast<std::size_t>(std::lround((w.t0 - exact.t0) / exact.h));
        for (std::size_t i = 0; i < w.size(); ++i) {
            const double ref = exact.values[shift + i];
            wronskian = std::max(wronskian, std::abs(w.values[i] - ref) / std::abs(ref));
        }
    }
    double annihilation = 0.0;
    for (const auto& v : basis.basis) {
        for (double r : ect::apply_ln(weights, v).values) annihilation = std::max(annihilation, std::abs(r));
    }

    RunResult out;
    out.report["experiment"] = "ect";
    out.report["order"] = weights.order();
    out.report["n_quad"] = weights.n_quad();
    if (c.seed && !c.weights_file) out.report["seed"] = *c.seed;
    out.report["h"] = weights.h();
    out.report["roundtrip_max_rel"] = roundtrip;
    out.report["wronskian_max_rel"] = wronskian;
    out.report["annihilation_max"] = annihilation;

    io::CsvTable t;
    t.header.push_back("t");
    for (std::size_t k = 1; k <= weights.order(); ++k) t.header.push_back("rho_" + std::to_string(k));
    for (std::size_t k = 1; k <= weights.order(); ++k) t.header.push_back("recovered_" + std::to_string(k));
    for (std::size_t i = 0; i < weights.n_quad(); ++i) {
        std::vector<std::string> row{io::format_double(weights.node(i))};
        for (std::size_t k = 0; k < weights.order(); ++k) row.push_back(io::format_double(weights.weight(k)[i]));
        for (std::size_t k = 0; k < weights.order(); ++k) row.push_back(io::format_double(recovered.weight(k)[i]));
        t.rows.push_back(std::move(row));
    }
    out.tables["ect"] = std::move(t);
    return out;
}

RunResult run_widths1d(const ExperimentConfig& c) {
    const int p = *c.p;
    const int n = c.grid.front();
    const int top = *std::max_element(c.N.begin(), c.N.end());
    const spectral::Spectrum1D spectrum = spectral::solve_spectrum(p, n, std::max(top, p) + 1);
    std::optional<widths::Ellipsoid> ellipsoid;
    if (n <= 1025) ellipsoid.emplace(widths::Ellipsoid::from_derivative(p, n));

    RunResult out;
    out.report["experiment"] = "widths1d";
    out.report["p"] = p;
    out.report["grid"] = n;
    out.report["reports"] = io::Json::array();
    std::vector<io::WidthRow> rows;
    for (int N : c.N) {
        const spectral::WidthValue w = spectral::kolmogorov_width(spectrum, N);
        io::WidthRow row{p, N, n, w.value, std::nullopt, w.value};
        if (ellipsoid) row.oracle = widths::brute_force_distance(widths::leading_modes(spectrum, N), *ellipsoid).distance;
        io::Json j;
        j["p"] = p;
        j["N"] = N;
        j["grid"] = n;
        j["value"] = io::to_json(row.value);
        j["lambda_next"] = spectrum.values(N);
        j["oracle_value"] = row.oracle ? io::to_json(*row.oracle) : io::Json(nullptr);
        out.report["reports"].push_back(j);
        rows.push_back(row);
    }
    out.tables["widths"] = io::widths_table(rows);
    out.tables["spectrum"] = spectrum_table(spectrum.values);
    return out;
}

struct Operator {
    elliptic::EllipticOperator2D op;
    elliptic::ClampedSpectrum clamped;
};

Operator clamped_for(const Polynomial2& symbol, int p, int m, int count) {
    elliptic::RectGrid grid(m);
    elliptic::EllipticOperator2D op = elliptic::assemble(symbol, p, grid);
    count = std::min(count, op.interior_count());
    elliptic::ClampedSpectrum cl = elliptic::clamped_spectrum(op, count);
    return {std::move(op), std::move(cl)};
}

// Grids whose dense QR of L^T stays at desk scale.
constexpr int dense_kernel_nodes = 1300;

RunResult run_eigen2d(const ExperimentConfig& c) {
    const int p = *c.p;
    const Polynomial2 symbol = symbol_of(c);
    const int count = c.N.empty() ? 6 : std::max(1, *std::max_element(c.N.begin(), c.N.end()));
    CounterRng rng(*c.seed);

    RunResult out;
    out.report["experiment"] = "eigen2d";
    out.report["p"] = p;
    out.report["symbol"] = symbol.to_string();
    out.report["seed"] = *c.seed;
    out.report["grids"] = io::Json::array();
    io::CsvTable t{{"m", "j", "mu", "lambda"}, {}};
    for (int m : c.grid) {
        const Operator o = clamped_for(symbol, p, m, count);
        const bool with_kernel = o.op.grid.nodes() <= dense_kernel_nodes;
        const elliptic::Spectrum2D s = elliptic::lift_eigenfunctions(o.op, o.clamped, with_kernel);
        const double w = s.h * s.h;
        const Eigen::Index k = s.lambda.size();
        const Eigen::VectorXd scale = s.lambda.cwiseSqrt().cwiseInverse();
        const Eigen::MatrixXd normal = w * (scale.asDiagonal() * (s.phi.transpose() * s.phi) * scale.asDiagonal());
        io::Json g;
        g["m"] = m;
        g["interior"] = o.op.interior_count();
        g["kernel_dim_expected"] = o.op.grid.nodes() - o.op.interior_count();
        g["lambda_vs_mu_max_rel"] = ((s.lambda - o.clamped.mu).cwiseAbs().cwiseQuotient(o.clamped.mu)).maxCoeff();
        g["phi_orthonormality"] = (normal - Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff();
        if (with_kernel) {
            g["kernel_dim"] = s.kernel_basis.cols();
            g["psi_kernel_orthogonality"] = (w * (s.kernel_basis.transpose() * s.psi)).cwiseAbs().maxCoeff();
            g["green_check"] = elliptic::green_orthogonality_check(o.op, s, 8, rng).max_deviation();
        }
        out.report["grids"].push_back(g);
        for (Eigen::Index j = 0; j < k; ++j) {
            t.rows.push_back({std::to_string(m), std::to_string(j + 1), io::format_double(o.clamped.mu(j)),
                              io::format_double(s.lambda(j))});
        }
        out.tables["spectrum_m" + std::to_string(m)] = spectrum_table(s.lambda);
        if (m == c.grid.back()) {
            for (Eigen::Index j = 0; j < std::min<Eigen::Index>(k, 3); ++j) {
                out.tables["psi_" + std::to_string(j + 1)] = field_table(o.op.grid, s.psi.col(j));
            }
        }
    }
    out.tables["spectrum"] = std::move(t);
    return out;
}

RunResult run_widths2d(const ExperimentConfig& c) {
    const int p = *c.p;
    const Polynomial2 symbol = symbol_of(c);
    const int top = *std::max_element(c.N.begin(), c.N.end());
    RunResult out;
    out.report["experiment"] = "widths2d";
    out.report["symbol"] = symbol.to_string();
    out.report["reports"] = io::Json::array();
    std::vector<io::WidthRow> rows;
    for (int m : c.grid) {
        const Operator o = clamped_for(symbol, p, m, top + 1);
        const elliptic::Spectrum2D s = elliptic::lift_eigenfunctions(o.op, o.clamped, true);
        const widths::Ellipsoid e = widths::Ellipsoid::from_operator(o.op);
        for (int N : c.N) {
            const widths::WidthReport2D r = widths::harmonic_width(s, e, N);
            out.report["reports"].push_back(io::to_json(r));
            rows.push_back(io::to_row(r));
        }
    }
    out.tables["widths"] = io::widths_table(rows);
    return out;
}

RunResult run_direct(const ExperimentConfig& c) {
    const int M = *c.p;
    RunResult out;
    out.report["experiment"] = "direct";
    out.report["M"] = M;
    io::CsvTable t{{"case", "m", "residual", "measured", "observed_order"}, {}};
    auto study = [&](const std::string& name, auto make_space, auto top_data) {
        io::Json cases = io::Json::array();
        std::optional<double> previous;
        for (int m : c.grid) {
            const elliptic::RectGrid grid(m);
            const widths::FirstKindSpace space = make_space(grid);
            std::vector<elliptic::BoundaryData> data;
            for (int j = 0; j + 1 < M; ++j) data.push_back(elliptic::BoundaryData::zero(grid, 1));
            data.push_back(elliptic::BoundaryData::sample(grid, 1, top_data));
            const widths::DirectSolution s = widths::direct_solution(space, data);
            std::optional<double> order;
            if (previous && s.residual > 0.0) order = std::log2(*previous / s.residual);
            previous = s.residual;
            io::Json j;
            j["m"] = m;
            j["residual"] = s.residual;
            j["measured"] = s.measured;
            j["observed_order"] = order ? io::Json(*order) : io::Json(nullptr);
            cases.push_back(j);
            if (m == c.grid.back()) out.tables["field_" + name] = field_table(grid, s.u);
            t.rows.push_back({name, std::to_string(m), io::format_double(s.residual), std::to_string(s.measured),
                              order ? io::format_double(*order) : std::string("nan")});
        }
        out.report[name] = cases;
    };
    study("polyharmonic", [M](const elliptic::RectGrid& g) { return widths::polyharmonic_first_kind(g, M); },
          [](double x, double y) { return x * x - y * y; });
    if (M == 2) {
        study("ball", [](const elliptic::RectGrid& g) { return widths::ball_first_kind(g); },
              [](double x, double y) { return 1.0 + x * x - y * y; });
    }
    out.tables["direct"] = std::move(t);
    return out;
}

RunResult run_symdiv(const ExperimentConfig& c) {
    Polynomial2 num;
    Polynomial2 den;
    try {
        num = Polynomial2::parse(*c.symbol);
    } catch (const Error& e) {
        bad("symbol", e.what());
    }
    try {
        den = Polynomial2::parse(*c.divisor);
    } catch (const Error& e) {
        bad("divisor", e.what());
    }
    const Division d = divide(num, den);
    RunResult out;
    out.report["experiment"] = "symdiv";
    out.report["numerator"] = num.to_string();
    out.report["divisor"] = den.to_string();
    out.report["divides"] = d.remainder.is_zero();
    out.report["quotient"] = d.quotient.to_string();
    out.report["remainder"] = d.remainder.to_string();
    io::Json elliptic = nullptr;
    if (d.remainder.is_zero() && num.is_homogeneous() && den.is_homogeneous() && num.degree() >= den.degree()) {
        elliptic = factorization_certificate(num, den).quotient_elliptic.value_or(false);
    }
    out.report["quotient_elliptic"] = elliptic;
    out.report["identity_holds"] = (d.quotient * den + d.remainder) == num;
    return out;
}

RunResult run_convergence(const ExperimentConfig& c) {
    const int p = *c.p;
    const Polynomial2 symbol = symbol_of(c);
    std::vector<double> values;
    for (int m : c.grid) values.push_back(clamped_for(symbol, p, m, 1).clamped.mu(0));
    const std::vector<ConvergenceRow> rows = convergence_rows(c.grid, values);
    RunResult out;
    out.report["experiment"] = "convergence";
    out.report["quantity"] = "mu_1";
    out.report["p"] = p;
    out.report["symbol"] = symbol.to_string();
    out.report["rows"] = io::Json::array();
    io::CsvTable t{{"grid", "value", "error_vs_oracle", "observed_order"}, {}};
    for (const auto& r : rows) {
        io::Json j;
        j["grid"] = r.grid;
        j["value"] = r.value;
        j["error_vs_oracle"] = r.error_vs_oracle;
        j["observed_order"] = r.observed_order ? io::Json(*r.observed_order) : io::Json(nullptr);
        out.report["rows"].push_back(j);
        t.rows.push_back({std::to_string(r.grid), io::format_double(r.value), io::format_double(r.error_vs_oracle),
                          r.observed_order ? io::format_double(*r.observed_order) : std::string("nan")});
    }
    out.tables["convergence"] = std::move(t);
    return out;
}

}  // namespace

std::string to_string(Experiment e) {
    switch (e) {
        case Experiment::Ect: return "ect";
        case Experiment::Widths1d: return "widths1d";
        case Experiment::Eigen2d: return "eigen2d";
        case Experiment::Widths2d: return "widths2d";
        case Experiment::Direct: return "direct";
        case Experiment::Symdiv: return "symdiv";
        case Experiment::Convergence: return "convergence";
    }
    return "?";
}

Experiment parse_experiment(const std::string& name) {
    for (auto e : {Experiment::Ect, Experiment::Widths1d, Experiment::Eigen2d, Experiment::Widths2d, Experiment::Direct,
                   Experiment::Symdiv, Experiment::Convergence}) {
        if (to_string(e) == name) return e;
    }
    bad("experiment", "unknown experiment '" + name + "'");
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    auto to_int = [&](const std::string& s) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != s.size()) throw Error(ErrorKind::InvalidConfig, "not an integer list: '" + text + "'");
        return v;
    };
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        const std::size_t dots = item.find("..");
        if (dots == std::string::npos) {
            out.push_back(to_int(item));
        } else {
            const int lo = to_int(item.substr(0, dots));
            const int hi = to_int(item.substr(dots + 2));
            if (hi < lo) throw Error(ErrorKind::InvalidConfig, "empty range in '" + text + "'");
            for (int v = lo; v <= hi; ++v) out.push_back(v);
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

ExperimentConfig parse_config(const io::Json& j) {
    if (!j.is_object()) throw Error(ErrorKind::InvalidConfig, "config must be a JSON object");
    ExperimentConfig c;
    for (const auto& [key, v] : j.items()) {
        if (key == "experiment") {
            c.experiment = parse_experiment(text_field(v, key));
        } else if (key == "p") {
            if (!v.is_number_integer()) bad(key, "expected an integer");
            c.p = v.get<int>();
        } else if (key == "N") {
            c.N = int_list(v, key);
        } else if (key == "grid") {
            c.grid = int_list(v, key);
        } else if (key == "seed") {
            if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
                bad(key, "expected an unsigned 64-bit integer");
            }
            c.seed = v.get<std::uint64_t>();
        } else if (key == "symbol") {
            c.symbol = text_field(v, key);
        } else if (key == "divisor") {
            c.divisor = text_field(v, key);
        } else if (key == "weights_file") {
            c.weights_file = text_field(v, key);
        } else if (key == "out") {
            c.out = text_field(v, key);
        } else {
            bad(key, "unknown field");
        }
    }
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    io::Json j;
    try {
        j = io::read_json(path);
    } catch (const Error& e) {
        throw Error(ErrorKind::InvalidConfig, e.what());
    }
    return parse_config(j);
}

void validate(const ExperimentConfig& c) {
    require(c.experiment.has_value(), "experiment");
    require(c.out.has_value(), "out");
    switch (*c.experiment) {
        case Experiment::Ect:
            require_p(c, 8);
            require_single_grid(c);
            if (c.grid.front() < 16) bad("grid", "n_quad must be >= 16");
            if (!c.weights_file) require(c.seed.has_value(), "seed");
            break;
        case Experiment::Widths1d:
            require_p(c, 4);
            require_N(c);
            require_single_grid(c);
            if (c.grid.front() < 4 * *c.p + 4) bad("grid", "1D grids need n >= 4p+4");
            if (*std::max_element(c.N.begin(), c.N.end()) + 1 > c.grid.front()) bad("N", "exceeds the grid size");
            break;
        case Experiment::Eigen2d:
            require_p(c, 3);
            require_2d_grids(c, *c.p);
            require(c.seed.has_value(), "seed");
            break;
        case Experiment::Widths2d:
            require_p(c, 3);
            require_N(c);
            require_2d_grids(c, *c.p);
            break;
        case Experiment::Direct:
            require_p(c, 3);
            require_2d_grids(c, 1);
            break;
        case Experiment::Symdiv:
            require(c.symbol.has_value(), "symbol");
            require(c.divisor.has_value(), "divisor");
            break;
        case Experiment::Convergence:
            require_p(c, 3);
            require_2d_grids(c, *c.p);
            if (c.grid.size() < 3) bad("grid", "convergence needs at least three grids");
            if (!std::is_sorted(c.grid.begin(), c.grid.end()) ||
                std::adjacent_find(c.grid.begin(), c.grid.end()) != c.grid.end()) {
                bad("grid", "grids must be strictly increasing");
            }
            break;
    }
}

std::vector<ConvergenceRow> convergence_rows(const std::vector<int>& grids, const std::vector<double>& values) {
    const std::size_t n = grids.size();
    if (n < 3 || values.size() != n) throw Error(ErrorKind::InvalidArgument, "need at least three grids and values");
    for (std::size_t i = 1; i < n; ++i) {
        if (grids[i] <= grids[i - 1]) throw Error(ErrorKind::InvalidArgument, "grids must be strictly increasing");
    }
    const double d1 = values[n - 2] - values[n - 3];
    const double d2 = values[n - 1] - values[n - 2];
    const double denom = d2 - d1;
    const double oracle = denom != 0.0 ? values[n - 1] - d2 * d2 / denom : values[n - 1];
    std::vector<ConvergenceRow> rows;
    for (std::size_t i = 0; i < n; ++i) {
        ConvergenceRow r{grids[i], values[i], std::abs(values[i] - oracle), std::nullopt};
        if (i > 0 && r.error_vs_oracle > 0.0) r.observed_order = std::log2(rows.back().error_vs_oracle / r.error_vs_oracle);
        rows.push_back(r);
    }
    return rows;
}

RunResult run(const ExperimentConfig& c) {
    validate(c);
    switch (*c.experiment) {
        case Experiment::Ect: return run_ect(c);
        case Experiment::Widths1d: return run_widths1d(c);
        case Experiment::Eigen2d: return run_eigen2d(c);
        case Experiment::Widths2d: return run_widths2d(c);
        case Experiment::Direct: return run_direct(c);
        case Experiment::Symdiv: return run_symdiv(c);
        case Experiment::Convergence: return run_convergence(c);
    }
    throw Error(ErrorKind::InvalidConfig, "unreachable experiment");
}

void emit(const ExperimentConfig& c, const RunResult& result) {
    const std::filesystem::path dir(*c.out);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error(ErrorKind::IoFailure, "cannot create " + dir.string() + ": " + ec.message());
    io::write_json(dir / "report.json", result.report);
    for (const auto& [stem, table] : result.tables) io::write_csv(dir / (stem + ".csv"), table);
}

}  // namespace kwidth::experiment
