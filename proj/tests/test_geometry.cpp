#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "symcurv/symcurv.hpp"

using namespace symcurv;

namespace {

// assert a dense tensor equals the fixture map (closed under the symmetry)
void check_components(const TensorField& t, const fixtures::ComponentMap& expected,
                      const TensorSymmetry& sym, const Context& ctx) {
    std::map<std::vector<int>, Expr> full;
    for (const auto& [idx, text] : expected) {
        Expr v = parse_expression(text, ctx);
        for (const auto& [orbit_idx, sign] : sym.orbit(idx)) {
            Expr sv = sign > 0 ? v : -v;
            auto it = full.find(orbit_idx);
            if (it != full.end()) {
                REQUIRE(it->second == sv);
            } else {
                full[orbit_idx] = sv;
            }
        }
    }
    for_each_index(t.rank(), t.n(), [&](const std::vector<int>& idx) {
        auto it = full.find(idx);
        Expr want = it == full.end() ? Expr::zero(ctx) : it->second;
        INFO("component " << detail::index_string(idx));
        CHECK(t.at(idx) == want);
    });
}

MetricBundle flat_metric() {
    auto ctx = std::make_shared<Context>();
    ctx->declare_coordinate("t");
    ctx->declare_coordinate("x1");
    ctx->declare_coordinate("x2");
    ctx->declare_coordinate("x3");
    TensorField g(*ctx, {Slot::Cov, Slot::Cov});
    g.at({1, 1}) = Expr::one(*ctx);
    for (int i = 2; i <= 4; ++i) g.at({i, i}) = -Expr::one(*ctx);
    MetricBundle b;
    b.ctx = ctx;
    b.metric = make_metric(*ctx, std::move(g));
    b.assumptions = AssumptionSet(*ctx);
    b.name = "minkowski";
    return b;
}

} // namespace

TEST_CASE("flat metric: inverse, vanishing curvature") {
    MetricBundle b = flat_metric();
    CHECK(b.metric.ginv == [&] {
        TensorField g(*b.ctx, {Slot::Con, Slot::Con});
        g.at({1, 1}) = Expr::one(*b.ctx);
        for (int i = 2; i <= 4; ++i) g.at({i, i}) = -Expr::one(*b.ctx);
        return g;
    }());
    CHECK(b.metric.gamma.is_zero());
    CurvatureData cd = curvature_data(b.metric);
    CHECK(cd.riemann.is_zero());
    CHECK(cd.ricci.is_zero());
    CHECK(cd.kappa.is_zero());
    CHECK(divergence(cd.riemann, 1, b.metric).is_zero());
}

TEST_CASE("metric construction validates shape and regularity") {
    auto ctx = std::make_shared<Context>();
    ctx->declare_coordinate("t");
    ctx->declare_coordinate("x1");
    ctx->declare_coordinate("x2");
    TensorField g(*ctx, {Slot::Cov, Slot::Cov});
    g.at({1, 2}) = Expr::one(*ctx);
    g.at({2, 1}) = Expr::one(*ctx);
    // rank-deficient
    CHECK_THROWS_AS(make_metric(*ctx, g), SingularMetric);
}

TEST_CASE("pure radiation metric: inverse fixture") {
    MetricBundle b = builtin_metric("prm");
    const Context& ctx = *b.ctx;
    CHECK(b.metric.ginv.at({1, 1}).is_zero());
    CHECK(b.metric.ginv.at({1, 2}) == Expr::one(ctx));
    CHECK(b.metric.ginv.at({2, 2}) == parse_expression("-(x^3*w + 3*p^2*r^2)/x^2", ctx));
    CHECK(b.metric.ginv.at({2, 3}) == parse_expression("-2*p^2*r/x", ctx));
    CHECK(b.metric.ginv.at({3, 3}) == parse_expression("-p^2", ctx));
    CHECK(b.metric.ginv.at({4, 4}) == parse_expression("-p^2", ctx));
    CHECK(b.metric.det == parse_expression("-1/p^4", ctx));
}

TEST_CASE("pp-wave block inverse") {
    MetricBundle b = builtin_metric("ppw");
    const Context& ctx = *b.ctx;
    CHECK(b.metric.ginv.at({1, 2}) == Expr::one(ctx));
    CHECK(b.metric.ginv.at({2, 2}) == parse_expression("-h", ctx));
    CHECK(b.metric.ginv.at({3, 3}) == Expr::one(ctx));
}

TEST_CASE("catalog metrics satisfy the structural identities") {
    for (const char* name : {"prm", "gprm", "gppw", "ppw"}) {
        DYNAMIC_SECTION("metric " << name) {
            MetricBundle b = builtin_metric(name);
            const Context& ctx = *b.ctx;
            const int n = 4;
            // g^{ik} g_{kj} = delta
            for (int i = 1; i <= n; ++i)
                for (int j = 1; j <= n; ++j) {
                    Expr sum = Expr::zero(ctx);
                    for (int k = 1; k <= n; ++k)
                        sum = sum + b.metric.ginv.at({i, k}) * b.metric.g.at({k, j});
                    CHECK(sum == (i == j ? Expr::one(ctx) : Expr::zero(ctx)));
                }
            // Gamma symmetric in the lower pair
            for (int k = 1; k <= n; ++k)
                for (int i = 1; i <= n; ++i)
                    for (int j = 1; j <= n; ++j)
                        CHECK(b.metric.gamma.at({k, i, j}) == b.metric.gamma.at({k, j, i}));
            // nabla g = 0
            CHECK(covariant_derivative(b.metric.g, b.metric).is_zero());
            CurvatureData cd = curvature_data(b.metric);
            // riemann-type symmetries
            for_each_index(4, n, [&](const std::vector<int>& idx) {
                int i = idx[0], j = idx[1], k = idx[2], l = idx[3];
                CHECK(cd.riemann.at({i, j, k, l}) == -cd.riemann.at({j, i, k, l}));
                CHECK(cd.riemann.at({i, j, k, l}) == -cd.riemann.at({i, j, l, k}));
                CHECK(cd.riemann.at({i, j, k, l}) == cd.riemann.at({k, l, i, j}));
            });
            // first and second Bianchi identities
            CHECK(cyclic_sum(cd.riemann, 1, 2, 3).is_zero());
            TensorField nablaR = covariant_derivative(cd.riemann, b.metric);
            CHECK(cyclic_sum(nablaR, 5, 1, 2).is_zero());
            // kappa equals the g-trace of S
            Expr tr = Expr::zero(ctx);
            for (int i = 1; i <= n; ++i)
                for (int j = 1; j <= n; ++j)
                    tr = tr + b.metric.ginv.at({i, j}) * cd.ricci.at({i, j});
            CHECK(tr == cd.kappa);
            // Ricci is symmetric
            for (int i = 1; i <= n; ++i)
                for (int j = 1; j <= n; ++j) CHECK(cd.ricci.at({i, j}) == cd.ricci.at({j, i}));
        }
    }
}

TEST_CASE("pure radiation curvature tables") {
    MetricBundle b = builtin_metric("prm");
    const Context& ctx = *b.ctx;
    CurvatureData cd = curvature_data(b.metric);
    check_components(cd.riemann, fixtures::prm_riemann(), TensorSymmetry::riemann(4), ctx);
    check_components(cd.ricci, fixtures::prm_ricci(), TensorSymmetry::symmetric_pair(0, 1, 2), ctx);
    CHECK(cd.kappa.is_zero());
    TensorField nablaR = covariant_derivative(cd.riemann, b.metric);
    check_components(nablaR, fixtures::prm_nabla_riemann(), TensorSymmetry::riemann(5), ctx);
    TensorField nablaS = covariant_derivative(cd.ricci, b.metric);
    check_components(nablaS, fixtures::prm_nabla_ricci(), TensorSymmetry::symmetric_pair(0, 1, 3),
                     ctx);
}

TEST_CASE("wider metric curvature tables") {
    MetricBundle b = builtin_metric("gprm");
    const Context& ctx = *b.ctx;
    CurvatureData cd = curvature_data(b.metric);
    check_components(cd.riemann, fixtures::gprm_riemann(), TensorSymmetry::riemann(4), ctx);
    check_components(cd.ricci, fixtures::gprm_ricci(), TensorSymmetry::symmetric_pair(0, 1, 2), ctx);
    CHECK(cd.kappa == parse_expression(fixtures::gprm_kappa(), ctx));
}

TEST_CASE("covariant derivative of the null covector du on the wider metric") {
    MetricBundle b = builtin_metric("gprm");
    const Context& ctx = *b.ctx;
    TensorField du(ctx, {Slot::Cov});
    du.at({1}) = Expr::one(ctx);
    TensorField nabla = covariant_derivative(du, b.metric);
    CHECK(nabla.at({1, 1}) == parse_expression("a*r/x^2", ctx));
    CHECK(nabla.at({1, 3}) == parse_expression("b/(2*x)", ctx));
    CHECK(nabla.at({3, 1}) == parse_expression("b/(2*x)", ctx));
    int nz = 0;
    for (const Expr& e : nabla.comp)
        if (!e.is_zero()) ++nz;
    CHECK(nz == 3);
}

TEST_CASE("raising and lowering are inverse") {
    MetricBundle b = builtin_metric("prm");
    CurvatureData cd = curvature_data(b.metric);
    // lowering the operator's contravariant slot gives R; re-raising returns it
    TensorField lowered = lower_slot(cd.op, 1, b.metric);
    TensorField raised = raise_slot(lowered, 1, b.metric);
    CHECK(raised == cd.op);
    // and the lowered operator is the (0,4) tensor with slots permuted:
    // lowered[m i j k] = g_{m l} D^l_{ijk} = R_{i j k m}
    for_each_index(4, 4, [&](const std::vector<int>& idx) {
        CHECK(lowered.at(idx) == cd.riemann.at({idx[1], idx[2], idx[3], idx[0]}));
    });
    // raising the du covector: g has g^{12} = 1, so the dual vector points
    // along the second coordinate
    const Context& ctx = *b.ctx;
    TensorField du(ctx, {Slot::Cov});
    du.at({1}) = Expr::one(ctx);
    TensorField dual = raise_slot(du, 1, b.metric);
    CHECK(dual.at({2}) == Expr::one(ctx));
    CHECK(dual.at({1}).is_zero());
    CHECK(lower_slot(dual, 1, b.metric) == du);
}

TEST_CASE("finite-difference oracle confirms Gamma, Riemann and Ricci") {
    std::mt19937 rng(424242);
    std::uniform_real_distribution<double> xs(0.7, 1.8), os(-1.1, 1.1);

    auto run = [&](const char* name, const std::map<std::string, std::string>& binds,
                   const std::map<std::string, long double>& consts) {
        MetricBundle b = builtin_metric(name);
        const Context& ctx = *b.ctx;
        AssumptionSet bind(ctx);
        for (const auto& [fn, image] : binds)
            bind.set(*ctx.find(fn), parse_expression(image, ctx));
        bind.close();
        oracle::NumericMetric nm = oracle::numeric_metric(b, bind, consts);
        std::map<AtomId, long double> cvals = nm.constants;

        CurvatureData cd = curvature_data(b.metric);
        auto sym_eval = [&](const Expr& e, const oracle::Point& p) {
            std::map<AtomId, long double> vals = cvals;
            for (int k = 1; k <= 4; ++k) vals[ctx.coordinate(k)] = p[static_cast<std::size_t>(k - 1)];
            return substitute(e, bind).eval(vals);
        };
        int points = name == std::string("prm") ? 10 : 4;
        for (int t = 0; t < points; ++t) {
            oracle::Point p{os(rng), os(rng), xs(rng), os(rng)};
            for (int k = 1; k <= 4; ++k)
                for (int i = 1; i <= 4; ++i)
                    for (int j = i; j <= 4; ++j) {
                        long double fd = oracle::fd_christoffel(nm, k, i, j, p);
                        long double sym = sym_eval(b.metric.gamma.at({k, i, j}), p);
                        INFO(name << " Gamma[" << k << "][" << i << "][" << j << "] at point " << t);
                        CHECK(oracle::close_rel(fd, sym, 1e-6L));
                    }
            // a representative set of curvature components
            std::vector<std::array<int, 4>> rcomps = {
                {1, 3, 1, 3}, {1, 4, 1, 4}, {1, 2, 1, 2}, {1, 3, 2, 4}, {3, 4, 3, 4}, {1, 2, 1, 3}};
            for (auto [i, j, k, l] : rcomps) {
                long double fd = 0.0L;
                for (int m = 1; m <= 4; ++m)
                    fd += oracle::fd_riemann_op(nm, m, i, j, k, p) * nm.g(m, l, p);
                long double sym = sym_eval(cd.riemann.at({i, j, k, l}), p);
                INFO(name << " R[" << i << j << k << l << "] at point " << t);
                CHECK(oracle::close_rel(fd, sym, 1e-6L));
            }
            for (int i = 1; i <= 4; ++i)
                for (int j = i; j <= 4; ++j) {
                    long double fd = oracle::fd_ricci(nm, i, j, p);
                    long double sym = sym_eval(cd.ricci.at({i, j}), p);
                    INFO(name << " S[" << i << "][" << j << "] at point " << t);
                    CHECK(oracle::close_rel(fd, sym, 1e-6L));
                }
        }
    };

    run("prm", {{"w", "u*x*y + x^3 + y^3 + u^2*x"}}, {{"p", 1.5L}});
    run("gprm", {{"w", "u*x*y + x^3 + y^3"}, {"f", "3 + x^2 + y^2 + x*y/2"}},
        {{"a", 1.25L}, {"b", -0.75L}});
    run("ppw", {{"h", "u*x*y + x^3 - y^3"}}, {});
}
