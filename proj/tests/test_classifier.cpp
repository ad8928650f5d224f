#include <catch2/catch_amalgamated.hpp>

#include "support/fixtures.hpp"
#include "symcurv/symcurv.hpp"

using namespace symcurv;

namespace {

struct PrmFixture {
    MetricBundle b = builtin_metric("prm");
    GeometryCache g = make_cache(b);
    Expr parse(const std::string& s) { return parse_expression(s, *b.ctx); }
    AtomId fatom(const std::string& s) {
        return parse(s).num().terms[0].mono.factors[0].atom;
    }
};

bool holds(const PropertyVerdict& v) {
    return v.status == Status::Holds || v.status == Status::HoldsUnderAssumptions;
}

const std::string* witness(const PropertyVerdict& v, const std::string& key) {
    for (const auto& [k, val] : v.witness)
        if (k == key) return &val;
    return nullptr;
}

} // namespace

TEST_CASE("derivative classes of the metric and the Ricci tensor") {
    PrmFixture f;
    SECTION("the metric itself is parallel") {
        TensorField ng = covariant_derivative(f.b.metric.g, f.b.metric);
        auto vs = derivative_class("g", f.b.metric.g, ng, f.g);
        CHECK(vs[0].status == Status::Holds); // parallel
        CHECK(vs[1].status == Status::Holds); // codazzi
        CHECK(vs[2].status == Status::Holds); // cyclic parallel
    }
    SECTION("the Ricci tensor is neither Codazzi nor cyclic parallel nor recurrent") {
        auto vs = derivative_class("ricci", f.g.cd.ricci, f.g.nablaS, f.g);
        CHECK(vs[0].status == Status::Fails);
        CHECK(vs[1].status == Status::Fails);
        CHECK(vs[2].status == Status::Fails);
        CHECK(vs[3].status == Status::Fails);
        CHECK_FALSE(vs[1].certificate.empty());
    }
}

TEST_CASE("recurrence systems") {
    PrmFixture f;
    SECTION("R, S, C are not recurrent") {
        CHECK(solve_recurrence(RecurrenceTarget::Riemann, f.g).status == Status::Fails);
        CHECK(solve_recurrence(RecurrenceTarget::Ricci, f.g).status == Status::Fails);
        CHECK(solve_recurrence(RecurrenceTarget::Conformal, f.g).status == Status::Fails);
    }
    SECTION("Ricci 1-forms are recurrent with the reference 1-form") {
        PropertyVerdict v = solve_recurrence(RecurrenceTarget::RicciOneForms, f.g);
        REQUIRE(holds(v));
        REQUIRE(v.space.has_value());
        std::vector<Expr> member;
        for (const auto& t : fixtures::prm_ricci_1form_witness()) member.push_back(f.parse(t));
        CHECK(solution_space_contains(*f.b.ctx, *v.space, member));
        // the assumption is the nowhere-vanishing hypothesis
        REQUIRE(v.assumptions.size() == 1);
        CHECK(f.parse(v.assumptions[0]) == f.parse("w_xx + w_yy"));
    }
    SECTION("conformal 2-forms are recurrent with the reference 1-form") {
        PropertyVerdict v = solve_recurrence(RecurrenceTarget::ConformalTwoForms, f.g);
        REQUIRE(holds(v));
        std::vector<Expr> member;
        for (const auto& t : fixtures::prm_conformal_2form_witness()) member.push_back(f.parse(t));
        CHECK(solution_space_contains(*f.b.ctx, *v.space, member));
    }
    SECTION("curvature 2-forms recurrence matches the Venzi space") {
        PropertyVerdict v = solve_recurrence(RecurrenceTarget::CurvatureTwoForms, f.g);
        REQUIRE(holds(v));
        std::vector<Expr> member = {Expr::one(*f.b.ctx), Expr::zero(*f.b.ctx),
                                    Expr::zero(*f.b.ctx), Expr::zero(*f.b.ctx)};
        CHECK(solution_space_contains(*f.b.ctx, *v.space, member));
    }
    SECTION("super generalized recurrence fails") {
        CHECK(solve_recurrence(RecurrenceTarget::SuperGeneralized, f.g).status == Status::Fails);
    }
}

TEST_CASE("quasi-Einstein structure of the pure radiation metric") {
    PrmFixture f;
    PropertyVerdict qe = quasi_einstein_level(f.g);
    REQUIRE(holds(qe));
    CHECK(*witness(qe, "level") == "1");
    CHECK(f.parse(*witness(qe, "alpha")).is_zero());
    PropertyVerdict rs = ricci_simple(f.g);
    REQUIRE(holds(rs));
    CHECK(f.parse(*witness(rs, "beta")) == f.parse("-(1/2)*p^2*(w_xx + w_yy)*x"));
    CHECK(*witness(rs, "eta") == "{1, 0, 0, 0}");
    CHECK(f.parse(*witness(rs, "eta_norm")).is_zero());
    PropertyVerdict ein = ein_level(f.g);
    REQUIRE(holds(ein));
    CHECK(*witness(ein, "minimal_degree") == "2");
    CHECK(f.parse(*witness(ein, "lambda_for_S^1")).is_zero());
    CHECK(f.parse(*witness(ein, "lambda_for_S^0")).is_zero());
    PropertyVerdict e = einstein_check(f.g);
    CHECK(e.status == Status::Fails);
}

TEST_CASE("Venzi spaces") {
    PrmFixture f;
    for (const char* name : {"venzi_R", "venzi_C", "venzi_P"}) {
        const TensorField& d = name == std::string("venzi_R")
                                   ? f.g.cd.riemann
                                   : (name == std::string("venzi_C") ? f.g.C : f.g.P);
        PropertyVerdict v = solve_venzi(name, d, f.g);
        REQUIRE(holds(v));
        CHECK(*witness(v, "dimension") == "1");
        CHECK(*witness(v, "span_1") == "{1, 0, 0, 0}");
    }
    SECTION("a flat metric is vacuous") {
        AssumptionSet s(*f.b.ctx);
        s.set(*f.b.ctx->find("w"), Expr::zero(*f.b.ctx));
        s.close();
        MetricBundle flat = apply_specialization(f.b, s, "flat");
        GeometryCache fg = make_cache(flat);
        CHECK(solve_venzi("venzi_R", fg.cd.riemann, fg).status == Status::Vacuous);
    }
}

TEST_CASE("weak symmetry solution spaces") {
    PrmFixture f;
    Context& ctx = *f.b.ctx;
    ctx.declare_constant("Pi1hat");
    ctx.declare_constant("Omega1hat");
    SECTION("weakly Ricci symmetric with the reference family") {
        PropertyVerdict v = solve_weak_symmetry("weakly_ricci_symmetric",
                                                WeakSymmetryTarget::ZTensor, f.g.cd.ricci,
                                                f.g.nablaS, f.g);
        REQUIRE(holds(v));
        REQUIRE(v.space->dimension() >= 2);
        std::vector<Expr> member;
        for (const auto& t : fixtures::prm_weak_ricci_witness()) member.push_back(f.parse(t));
        CHECK(solution_space_contains(ctx, *v.space, member));
    }
    SECTION("weakly cyclic Ricci symmetric with the reference family") {
        PropertyVerdict v = solve_weak_symmetry("weakly_cyclic_ricci_symmetric",
                                                WeakSymmetryTarget::CyclicRicci, f.g.cd.ricci,
                                                f.g.nablaS, f.g);
        REQUIRE(holds(v));
        std::vector<Expr> member;
        for (const auto& t : fixtures::prm_weak_cyclic_ricci_witness())
            member.push_back(f.parse(t));
        CHECK(solution_space_contains(ctx, *v.space, member));
    }
    SECTION("weak symmetry fails for all five curvature tensors") {
        TensorField nablaP = covariant_derivative(f.g.P, f.b.metric);
        TensorField nablaW = covariant_derivative(f.g.W, f.b.metric);
        TensorField nablaK = covariant_derivative(f.g.K, f.b.metric);
        CHECK(solve_weak_symmetry("ws_R", WeakSymmetryTarget::DTensor, f.g.cd.riemann, f.g.nablaR,
                                  f.g).status == Status::Fails);
        CHECK(solve_weak_symmetry("ws_C", WeakSymmetryTarget::DTensor, f.g.C, f.g.nablaC, f.g)
                  .status == Status::Fails);
        CHECK(solve_weak_symmetry("ws_P", WeakSymmetryTarget::DTensor, f.g.P, nablaP, f.g).status ==
              Status::Fails);
        CHECK(solve_weak_symmetry("ws_W", WeakSymmetryTarget::DTensor, f.g.W, nablaW, f.g).status ==
              Status::Fails);
        CHECK(solve_weak_symmetry("ws_K", WeakSymmetryTarget::DTensor, f.g.K, nablaK, f.g).status ==
              Status::Fails);
    }
}

TEST_CASE("compatibility spaces contain the reference families and the Ricci tensor") {
    PrmFixture f;
    Context& ctx = *f.b.ctx;
    for (const char* nm :
         {"a11", "a12", "a13", "a14", "a21", "a31", "a33", "a34", "a41", "a43", "a44"})
        ctx.declare_constant(nm);

    auto family_residual_zero = [&](const TensorField& D,
                                    const std::vector<std::vector<std::string>>& fam) {
        // substitute the family into the cyclic compatibility condition
        TensorField E(ctx, {Slot::Cov, Slot::Cov});
        for (int i = 1; i <= 4; ++i)
            for (int j = 1; j <= 4; ++j)
                E.at({i, j}) = f.parse(fam[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)]);
        TensorField endo = endomorphism_of(E, f.b.metric);
        bool all_zero = true;
        for_each_index(4, 4, [&](const std::vector<int>& idx) {
            int x = idx[0], x1 = idx[1], x2 = idx[2], x3 = idx[3];
            Expr sum = Expr::zero(ctx);
            for (int m = 1; m <= 4; ++m) {
                if (!endo.at({m, x1}).is_zero()) sum = sum + endo.at({m, x1}) * D.at({x2, x3, x, m});
                if (!endo.at({m, x2}).is_zero()) sum = sum + endo.at({m, x2}) * D.at({x3, x1, x, m});
                if (!endo.at({m, x3}).is_zero()) sum = sum + endo.at({m, x3}) * D.at({x1, x2, x, m});
            }
            if (!sum.is_zero()) all_zero = false;
        });
        return all_zero;
    };

    CHECK(family_residual_zero(f.g.cd.riemann, fixtures::prm_compat_family_R()));
    CHECK(family_residual_zero(f.g.C, fixtures::prm_compat_family_C()));
    CHECK(family_residual_zero(f.g.P, fixtures::prm_compat_family_P()));

    SECTION("the solver view: dimension 10, Ricci a member") {
        for (const TensorField* D : {&f.g.cd.riemann, &f.g.C, &f.g.P}) {
            PropertyVerdict v = solve_compatibility("compat", *D, f.g);
            REQUIRE(holds(v));
            CHECK(*witness(v, "dimension") == "10");
            CHECK(*witness(v, "ricci_compatible") == "yes");
        }
    }
    SECTION("g is R-compatible for any metric by the first Bianchi identity") {
        MetricBundle gb = builtin_metric("gprm");
        GeometryCache gg = make_cache(gb);
        TensorField endo(gg.ctx(), {Slot::Con, Slot::Cov});
        for (int i = 1; i <= 4; ++i) endo.at({i, i}) = Expr::one(gg.ctx()); // endo of g is identity
        bool all_zero = true;
        for_each_index(4, 4, [&](const std::vector<int>& idx) {
            int x = idx[0], x1 = idx[1], x2 = idx[2], x3 = idx[3];
            Expr sum = gg.cd.riemann.at({x1, x, x2, x3}) + gg.cd.riemann.at({x2, x, x3, x1}) +
                       gg.cd.riemann.at({x3, x, x1, x2});
            if (!sum.is_zero()) all_zero = false;
        });
        CHECK(all_zero);
    }
}

TEST_CASE("stress-energy classification") {
    PrmFixture f;
    SECTION("pure radiation with a null 1-form") {
        PropertyVerdict v = classify_stress_energy(f.g);
        REQUIRE(holds(v));
        CHECK(*witness(v, "class") == "pure_radiation");
        CHECK(*witness(v, "eta") == "{1, 0, 0, 0}");
        CHECK(f.parse(*witness(v, "rho")) == f.g.T.at({1, 1}));
    }
    SECTION("the wider metric turns pure radiation under the stated reduction") {
        MetricBundle gb = builtin_metric("gprm");
        AssumptionSet s(*gb.ctx);
        s.set(*gb.ctx->find("f"), parse_expression("1/a", *gb.ctx));
        s.set(*gb.ctx->find("b"), parse_expression("-2", *gb.ctx));
        s.close();
        MetricBundle red = apply_specialization(gb, s, "gprm-pure-radiation");
        GeometryCache rg = make_cache(red);
        PropertyVerdict v = classify_stress_energy(rg);
        REQUIRE(holds(v));
        CHECK(*witness(v, "class") == "pure_radiation");
    }
}

TEST_CASE("parallel null covectors") {
    SECTION("the pp-wave admits du as a parallel null covector") {
        MetricBundle b = builtin_metric("ppw");
        GeometryCache g = make_cache(b);
        PropertyVerdict v = constant_null_covector_check(g);
        CHECK(v.status == Status::Holds);
    }
    SECTION("the wider metric needs a = b = 0") {
        MetricBundle b = builtin_metric("gprm");
        {
            GeometryCache g = make_cache(b);
            CHECK(constant_null_covector_check(g).status == Status::Fails);
        }
        AssumptionSet s(*b.ctx);
        s.set(*b.ctx->find("a"), Expr::zero(*b.ctx));
        s.set(*b.ctx->find("b"), Expr::zero(*b.ctx));
        s.close();
        MetricBundle red = apply_specialization(b, s, "gprm-ab0");
        GeometryCache g = make_cache(red);
        CHECK(constant_null_covector_check(g).status == Status::Holds);
    }
}

TEST_CASE("linear relations between operator actions") {
    PrmFixture f;
    SECTION("the projective pseudosymmetry relation carries constants (1, 1/3)") {
        TensorField PP = dot_action(f.g.P, f.g.P, f.b.metric);
        TensorField QSP = q_operator(f.g.cd.ricci, f.g.P);
        PropertyVerdict v = find_linear_relation("rel", {&PP, &QSP}, f.g);
        REQUIRE(holds(v));
        const std::string* cr = witness(v, "constant_relation");
        REQUIRE(cr != nullptr);
        // the rational relation (c1, c2) must satisfy c2 = c1/3
        PropertyVerdict dummy = v;
        CHECK((*cr == "(1, 1/3)" || *cr == "(3, 1)" || *cr == "(-1, -1/3)" || *cr == "(-3, -1)"));
    }
    SECTION("both actions vanish: vacuous") {
        TensorField RR = dot_action(f.g.cd.riemann, f.g.cd.riemann, f.b.metric);
        TensorField QSR = q_operator(f.g.cd.ricci, f.g.cd.riemann);
        PropertyVerdict v = find_linear_relation("rel", {&RR, &QSR}, f.g);
        CHECK(v.status == Status::Vacuous);
    }
    SECTION("Ricci generalized pseudosymmetry appears for b = -2 and constant f") {
        MetricBundle gb = builtin_metric("gprm");
        Context& ctx = *gb.ctx;
        ctx.declare_constant("f0");
        AssumptionSet s(ctx);
        s.set(*ctx.find("b"), parse_expression("-2", ctx));
        s.set(*ctx.find("f"), parse_expression("f0", ctx));
        s.close();
        MetricBundle red = apply_specialization(gb, s, "gprm-ricci-gen-pseudo");
        GeometryCache rg = make_cache(red);
        TensorField RR = dot_action(rg.cd.riemann, rg.cd.riemann, red.metric);
        TensorField QSR = q_operator(rg.cd.ricci, rg.cd.riemann);
        CHECK(tensor_sub(RR, QSR).is_zero());
        PropertyVerdict venzi = solve_venzi("venzi_R", rg.cd.riemann, rg);
        REQUIRE(holds(venzi));
        CHECK(*witness(venzi, "span_1") == "{1, 0, 0, 0}");
    }
}
