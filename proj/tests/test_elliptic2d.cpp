#include "kwidth/elliptic2d.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace kwidth;
using namespace kwidth::elliptic;

namespace {

const Polynomial2 laplace = Polynomial2::parse("2,0:1 0,2:1");
const Polynomial2 bilaplace = Polynomial2::parse("4,0:1 2,2:2 0,4:1");

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::IoFailure;
}

double max_abs(const Eigen::VectorXd& v) { return v.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("assembled stencils") {
    const RectGrid g(9);
    const EllipticOperator2D lap = assemble(laplace, 1, g);
    CHECK(lap.stencil.weight(0, 0) == -4.0);
    CHECK(lap.stencil.weight(1, 0) == 1.0);
    CHECK(lap.stencil.taps().size() == 5);
    CHECK(lap.h_scale == doctest::Approx(64.0));
    const EllipticOperator2D bi = assemble(bilaplace, 2, g);
    CHECK(bi.stencil.taps().size() == 13);
    // Composition by hand: (D_xx + D_yy)^2 has centre 20, edge -8, diagonal 2, far 1.
    CHECK(bi.stencil.weight(0, 0) == 20.0);
    CHECK(bi.stencil.weight(0, 1) == -8.0);
    CHECK(bi.stencil.weight(-1, 1) == 2.0);
    CHECK(bi.stencil.weight(0, -2) == 1.0);
    // applying the 5-point operator twice on the full grid matches the 13-point rows
    const RectGrid g2(11);
    const EllipticOperator2D l1 = assemble(laplace, 1, g2);
    const EllipticOperator2D l2 = assemble(bilaplace, 2, g2);
    Eigen::VectorXd u = g2.sample([](double x, double y) { return std::sin(3 * x) * std::exp(y) + x * x * y; });
    const Eigen::VectorXd once = l1.apply(u);
    Eigen::VectorXd full = Eigen::VectorXd::Zero(g2.nodes());
    const auto nodes = l1.interior_nodes();
    for (std::size_t k = 0; k < nodes.size(); ++k) full(nodes[k]) = once(static_cast<Eigen::Index>(k));
    const Eigen::VectorXd twice = l1.apply(full);
    const Eigen::VectorXd direct = l2.apply(u);
    const int side1 = l1.window.side();
    const int side2 = l2.window.side();
    for (int y = 0; y < side2; ++y) {
        for (int x = 0; x < side2; ++x) {
            CHECK(direct(y * side2 + x) == doctest::Approx(twice((y + 1) * side1 + (x + 1))).epsilon(1e-10));
        }
    }
    // anisotropic symbol, Taylor consistency on x^2 + y^2: (1 * 2 + 2 * 2) = 6
    const EllipticOperator2D an = assemble(Polynomial2::parse("2,0:1 0,2:2"), 1, g);
    CHECK(an.stencil.weight(0, 0) == -6.0);
    CHECK(an.stencil.weight(0, 1) == 2.0);
    const Eigen::VectorXd q = an.apply(g.sample([](double x, double y) { return x * x + y * y; }));
    CHECK(max_abs(q.array() - 6.0) < 1e-9);
}

TEST_CASE("operator adjointness and matrix agreement") {
    const RectGrid g(13);
    const EllipticOperator2D op = assemble(bilaplace, 2, g);
    CounterRng rng(3);
    Eigen::VectorXd u(g.nodes());
    for (auto& v : u) v = rng.normal();
    Eigen::VectorXd w(op.interior_count());
    for (auto& v : w) v = rng.normal();
    CHECK((op.apply(u) - op.matrix * u).norm() <= 1e-10 * (op.matrix * u).norm());
    CHECK(op.apply(u).dot(w) == doctest::Approx(u.dot(op.apply_transpose(w))).epsilon(1e-12));
}

TEST_CASE("assembly errors") {
    const RectGrid g(9);
    CHECK(kind_of([&] { assemble(Polynomial2::parse("2,0:1 0,2:-1"), 1, g); }) == ErrorKind::NotElliptic);
    CHECK(kind_of([&] { assemble(Polynomial2::parse("2,0:1 1,1:1 0,2:1"), 1, g); }) == ErrorKind::OddSymbol);
    CHECK(kind_of([&] { assemble(laplace, 2, g); }) == ErrorKind::NotHomogeneous);
    CHECK(kind_of([&] { assemble(bilaplace, 2, RectGrid(6)); }) == ErrorKind::GridTooCoarse);
    CHECK(kind_of([&] { RectGrid(2); }) == ErrorKind::GridTooCoarse);
}

TEST_CASE("Dirichlet solves") {
    const RectGrid g(17);
    const EllipticOperator2D op = assemble(laplace, 1, g);
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(op.interior_count());
    SUBCASE("linear data") {
        const auto u = solve_dirichlet(op, zero, BoundaryData::sample(g, 1, [](double x, double) { return x; }));
        CHECK(max_abs(u - g.sample([](double x, double) { return x; })) < 1e-12);
    }
    SUBCASE("quadratic harmonic") {
        auto f = [](double x, double y) { return x * x - y * y; };
        const auto u = solve_dirichlet(op, zero, BoundaryData::sample(g, 1, f));
        CHECK(max_abs(u - g.sample(f)) < 1e-12);
    }
    SUBCASE("wrong band width") {
        CHECK(kind_of([&] { solve_dirichlet(op, zero, BoundaryData::zero(g, 2)); }) == ErrorKind::InvalidArgument);
    }
}

TEST_CASE("manufactured solution converges at second order") {
    const double pi = std::numbers::pi;
    auto exact = [pi](double x, double y) { return std::sin(pi * x) * std::sin(pi * y); };
    std::vector<double> errors;
    for (int m : {17, 33, 65}) {
        const RectGrid g(m);
        const EllipticOperator2D op = assemble(laplace, 1, g);
        Eigen::VectorXd rhs(op.interior_count());
        const auto nodes = op.interior_nodes();
        for (std::size_t k = 0; k < nodes.size(); ++k) {
            const double x = g.coord(nodes[k] % m);
            const double y = g.coord(nodes[k] / m);
            rhs(static_cast<Eigen::Index>(k)) = -2.0 * pi * pi * exact(x, y);
        }
        const auto u = solve_dirichlet(op, rhs, BoundaryData::zero(g, 1));
        errors.push_back(max_abs(u - g.sample(exact)));
    }
    CHECK(std::log2(errors[0] / errors[1]) >= 1.9);
    CHECK(std::log2(errors[1] / errors[2]) >= 1.9);
}

TEST_CASE("biharmonic Dirichlet solve pins the band") {
    const RectGrid g(15);
    const EllipticOperator2D op = assemble(bilaplace, 2, g);
    auto f = [](double x, double y) { return x * x * x - 3 * x * y * y + y; };  // biharmonic
    const auto u = solve_dirichlet(op, Eigen::VectorXd::Zero(op.interior_count()), BoundaryData::sample(g, 2, f));
    CHECK(max_abs(u - g.sample(f)) < 1e-9);
}

TEST_CASE("eigenfunction construction") {
    for (int p : {1, 2}) {
        const RectGrid g(17);
        const EllipticOperator2D op = assemble(p == 1 ? laplace : bilaplace, p, g);
        const int ni = op.interior_count();
        const ClampedSpectrum cl = clamped_spectrum(op, ni);
        CHECK(cl.mu.minCoeff() > 0.0);
        // independent route: singular values of L
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(Eigen::MatrixXd(op.matrix));
        Eigen::VectorXd sq = svd.singularValues().cwiseAbs2();
        std::sort(sq.data(), sq.data() + sq.size());
        for (int k = 0; k < ni; ++k) CHECK(std::abs(cl.mu(k) - sq(k)) <= 1e-8 * sq(k));

        const Spectrum2D s = lift_eigenfunctions(op, cl);
        CHECK(s.kernel_basis.cols() == g.nodes() - ni);
        const double w = s.h * s.h;
        CHECK((s.lambda - cl.mu).cwiseAbs().cwiseQuotient(cl.mu).maxCoeff() <= 1e-8);
        // the square basis {kernel, psi} is orthonormal and complete
        Eigen::MatrixXd basis(g.nodes(), g.nodes());
        basis << s.kernel_basis, s.psi;
        const Eigen::MatrixXd gram = w * basis.transpose() * basis;
        CHECK((gram - Eigen::MatrixXd::Identity(g.nodes(), g.nodes())).cwiseAbs().maxCoeff() <= 1e-10);
        const Eigen::VectorXd scale = s.lambda.cwiseSqrt().cwiseInverse();
        const Eigen::MatrixXd phi_gram = w * scale.asDiagonal() * s.phi.transpose() * s.phi * scale.asDiagonal();
        CHECK((phi_gram - Eigen::MatrixXd::Identity(ni, ni)).cwiseAbs().maxCoeff() <= 1e-8);
        // dihedral symmetry: the x <-> y pair of the second mode is degenerate
        CHECK(std::abs(s.lambda(1) - s.lambda(2)) <= 1e-8 * s.lambda(1));
    }
}

TEST_CASE("iterative and dense clamped spectra agree") {
    const RectGrid g(37);  // interior 35^2 = 1225 > dense limit
    const EllipticOperator2D op = assemble(laplace, 1, g);
    const ClampedSpectrum it = clamped_spectrum(op, 4);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Eigen::MatrixXd(op.matrix * SparseMatrix(op.matrix.transpose())),
                                                      Eigen::EigenvaluesOnly);
    for (int k = 0; k < 4; ++k) CHECK(it.mu(k) == doctest::Approx(es.eigenvalues()(k)).epsilon(1e-9));
    const Spectrum2D s = lift_eigenfunctions(op, it, false);
    CHECK(s.kernel_basis.cols() == 0);
    for (int k = 0; k < 4; ++k) CHECK(s.lambda(k) == doctest::Approx(it.mu(k)).epsilon(1e-8));
}

TEST_CASE("Green identity check and fault injection") {
    const RectGrid g(17);
    const EllipticOperator2D op = assemble(laplace, 1, g);
    const Spectrum2D s = lift_eigenfunctions(op, clamped_spectrum(op, 12));
    CounterRng rng(8);
    CHECK(green_orthogonality_check(op, s, 20, rng).max_deviation() <= 1e-9);
    // constants are discrete-harmonic
    const Eigen::VectorXd one = Eigen::VectorXd::Ones(g.nodes());
    CHECK((s.h * s.h * s.psi.transpose() * one).cwiseAbs().maxCoeff() <= 1e-10);

    EllipticOperator2D broken = op;
    const int centre = broken.interior_count() / 2;
    const int node = broken.interior_nodes()[static_cast<std::size_t>(centre)];
    broken.matrix.coeffRef(centre, node) *= 1.0 + 1e-3;
    CHECK(green_orthogonality_check(broken, s, 20, rng).max_deviation() > 1e-6);
}

TEST_CASE("clamped mu_1 increases towards its limit for p = 1") {
    double previous = 0.0;
    for (int m : {17, 25, 33}) {
        const EllipticOperator2D op = assemble(laplace, 1, RectGrid(m));
        const double mu = clamped_spectrum(op, 1).mu(0);
        CHECK(mu > previous);
        previous = mu;
    }
}
