#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "spicy/checks.hpp"
#include "spicy/models.hpp"

using namespace spicy;

namespace {

template <class F>
ModelBundle<F> exterior(const F& f, std::uint32_t n, std::uint32_t d, long r) {
    ShiftModelSpec spec;
    spec.n_generators = n;
    spec.window = {d, Rat(r)};
    return build_exterior_model(f, spec);
}

template <class F>
ModelBundle<F> polynomial(const F& f, std::uint32_t n, std::uint32_t d, long r) {
    ShiftModelSpec spec;
    spec.n_generators = n;
    spec.m = 2;
    spec.window = {d, Rat(r)};
    return build_polynomial_model(f, spec);
}

template <class F>
Element<F> by_id(const BialgebraInstance<F>& inst, const std::string& id) {
    return inst.module().basis_vector(inst.module().index_of(id));
}

template <class F>
TensorElement<F> tensor_of(const BialgebraInstance<F>& inst,
                           std::vector<std::tuple<std::string, std::string, long>> terms) {
    const auto& mod = inst.module();
    TensorElement<F> out;
    for (auto& [l, r, c] : terms)
        add_term(mod.field(), out, mod.index_of(l), mod.index_of(r), mod.field().from_int(c));
    return out;
}

}  // namespace

TEST_CASE("multiply: unit, exterior signs, odd squares") {
    RationalField Q;
    auto bundle = exterior(Q, 2, 2, 3);
    const auto& inst = bundle.instance;
    auto x1 = by_id(inst, "x1"), x2 = by_id(inst, "x2"), x12 = by_id(inst, "x1*x2");

    for (const auto& b : inst.module().basis()) {
        Element<RationalField> e = inst.module().basis_vector(inst.module().index_of(b.id));
        CHECK(multiply(inst, inst.unit_element(), e) == e);
        CHECK(multiply(inst, e, inst.unit_element()) == e);
    }
    CHECK(multiply(inst, x1, x2) == x12);
    Element<RationalField> minus_x12 = scaled(Q, x12, Q.neg(Q.one()));
    CHECK(multiply(inst, x2, x1) == minus_x12);
    CHECK(multiply(inst, x1, x1).is_zero());
}

TEST_CASE("multiply: out-of-window products are explicit errors") {
    RationalField Q;
    ShiftModelSpec spec;
    spec.n_generators = 2;
    spec.window = {1, Rat(3)};  // degree cap 1: no products of generators
    auto bundle = build_exterior_model(Q, spec);
    auto x1 = by_id(bundle.instance, "x1"), x2 = by_id(bundle.instance, "x2");
    CHECK_THROWS_AS(multiply(bundle.instance, x1, x2), OutOfWindow);
}

TEST_CASE("tensor_multiply: Koszul signs") {
    RationalField Q;
    auto bundle = exterior(Q, 2, 2, 3);
    const auto& inst = bundle.instance;

    auto unit_unit = tensor_of(inst, {{"1", "1", 1}});
    auto a_b = tensor_of(inst, {{"x1", "x2", 1}});
    CHECK(tensor_multiply(inst, unit_unit, a_b) == a_b);

    auto x1_1 = tensor_of(inst, {{"x1", "1", 1}});
    auto one_x2 = tensor_of(inst, {{"1", "x2", 1}});
    CHECK(tensor_multiply(inst, x1_1, one_x2) == tensor_of(inst, {{"x1", "x2", 1}}));

    // (1 (x) x1)(x2 (x) 1) = (-1)^(1*1) x2 (x) x1
    auto one_x1 = tensor_of(inst, {{"1", "x1", 1}});
    auto x2_1 = tensor_of(inst, {{"x2", "1", 1}});
    CHECK(tensor_multiply(inst, one_x1, x2_1) == tensor_of(inst, {{"x2", "x1", -1}}));
}

TEST_CASE("tensor_multiply is associative on in-window triples") {
    PrimeField F3(3);
    auto bundle = exterior(F3, 3, 3, 6);
    const auto& inst = bundle.instance;
    std::vector<TensorElement<PrimeField>> ts = {
        tensor_of(inst, {{"x1", "1", 1}, {"1", "x1", 1}}),
        tensor_of(inst, {{"x2", "x1", 1}}),
        tensor_of(inst, {{"1", "x3", 2}, {"x3", "1", 1}}),
    };
    for (const auto& a : ts)
        for (const auto& b : ts)
            for (const auto& c : ts) {
                try {
                    auto lhs = tensor_multiply(inst, tensor_multiply(inst, a, b), c);
                    auto rhs = tensor_multiply(inst, a, tensor_multiply(inst, b, c));
                    CHECK(lhs == rhs);
                } catch (const OutOfWindow&) {
                    // boundary triples are outside the checkable window
                }
            }
}

TEST_CASE("coproduct: unit, primitives, polynomial square") {
    RationalField Q;
    auto ext = exterior(Q, 1, 1, 1);
    CHECK(coproduct(ext.instance, ext.instance.unit_element()) ==
          tensor_of(ext.instance, {{"1", "1", 1}}));
    CHECK(coproduct(ext.instance, by_id(ext.instance, "x1")) ==
          tensor_of(ext.instance, {{"1", "x1", 1}, {"x1", "1", 1}}));

    auto poly = polynomial(Q, 1, 4, 2);
    CHECK(coproduct(poly.instance, by_id(poly.instance, "x1^2")) ==
          tensor_of(poly.instance, {{"x1^2", "1", 1}, {"x1", "x1", 2}, {"1", "x1^2", 1}}));
}

TEST_CASE("reduced_coproduct and is_primitive") {
    RationalField Q;
    auto poly = polynomial(Q, 1, 4, 2);
    const auto& inst = poly.instance;
    CHECK(reduced_coproduct(inst, by_id(inst, "x1")).is_zero());
    CHECK(reduced_coproduct(inst, by_id(inst, "x1^2")) ==
          tensor_of(inst, {{"x1", "x1", 2}}));

    PrimeField F2(2);
    auto poly2 = polynomial(F2, 1, 4, 2);
    CHECK(reduced_coproduct(poly2.instance, by_id(poly2.instance, "x1^2")).is_zero());
    CHECK(is_primitive(poly2.instance, by_id(poly2.instance, "x1^2")));

    auto ext = exterior(Q, 2, 2, 3);
    CHECK(is_primitive(ext.instance, by_id(ext.instance, "x1")));
    CHECK(!is_primitive(ext.instance, by_id(ext.instance, "x1*x2")));

    // zero and inhomogeneous inputs are rejected
    CHECK_THROWS_AS(is_primitive(ext.instance, Element<RationalField>{}), Error);
    Element<RationalField> mixed = by_id(ext.instance, "x1");
    add_term(Q, mixed, ext.instance.module().index_of("x1*x2"), Q.one());
    CHECK_THROWS_AS(reduced_coproduct(ext.instance, mixed), Error);
    CHECK_THROWS_AS(reduced_coproduct(ext.instance, ext.instance.unit_element()), Error);
}

TEST_CASE("sigma_sign: pinned values and oracle cross-check") {
    CHECK(sigma_sign({}, 3) == 1);
    CHECK(sigma_sign({2}, 3) == -1);
    CHECK(sigma_sign({2, 3}, 3) == 1);
    CHECK_THROWS_AS(sigma_sign({4}, 3), Error);
    CHECK_THROWS_AS(sigma_sign({2, 2}, 3), Error);

    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        std::uint32_t n = 1 + rng() % 10;
        std::vector<std::uint32_t> I, perm;
        for (std::uint32_t i = 1; i <= n; ++i)
            if (rng() % 2)
                I.push_back(i);
        for (std::uint32_t i : I)
            perm.push_back(i - 1);
        for (std::uint32_t i = 1; i <= n; ++i)
            if (std::find(I.begin(), I.end(), i) == I.end())
                perm.push_back(i - 1);
        CHECK(sigma_sign(I, n) == oracle::perm_sign_cycles(perm));
    }

    // sigma(I)^2 = 1 and the full/empty sets are even
    for (std::uint32_t n = 1; n <= 8; ++n) {
        std::vector<std::uint32_t> all;
        for (std::uint32_t i = 1; i <= n; ++i)
            all.push_back(i);
        CHECK(sigma_sign(all, n) == 1);
        CHECK(sigma_sign({}, n) == 1);
    }
}

TEST_CASE("product_vI: conventions") {
    RationalField Q;
    auto bundle = exterior(Q, 2, 2, 3);
    const auto& inst = bundle.instance;
    std::vector<Element<RationalField>> prims{by_id(inst, "x1"), by_id(inst, "x2")};
    CHECK(product_vI(inst, prims, {}) == inst.unit_element());
    CHECK(product_vI(inst, prims, {1}) == prims[0]);
    CHECK(product_vI(inst, prims, {1, 2}) == by_id(inst, "x1*x2"));
    CHECK_THROWS_AS(product_vI(inst, prims, {2, 1}), Error);
}

TEST_CASE("coproduct_vI_formula: pinned expansions") {
    RationalField Q;
    auto ext = exterior(Q, 2, 2, 3);
    std::vector<Element<RationalField>> vs{by_id(ext.instance, "x1"), by_id(ext.instance, "x2")};
    auto odd = coproduct_vI_formula(ext.instance, vs, {1, 2}, 1);
    CHECK(odd == tensor_of(ext.instance, {{"1", "x1*x2", 1},
                                          {"x1", "x2", 1},
                                          {"x2", "x1", -1},
                                          {"x1*x2", "1", 1}}));

    auto poly = polynomial(Q, 2, 4, 3);
    std::vector<Element<RationalField>> ps{by_id(poly.instance, "x1"), by_id(poly.instance, "x2")};
    auto even = coproduct_vI_formula(poly.instance, ps, {1, 2}, 2);
    CHECK(even == tensor_of(poly.instance, {{"1", "x1*x2", 1},
                                            {"x1", "x2", 1},
                                            {"x2", "x1", 1},
                                            {"x1*x2", "1", 1}}));

    CHECK(coproduct_vI_formula(ext.instance, vs, {}, 1) ==
          tensor_of(ext.instance, {{"1", "1", 1}}));

    Element<RationalField> not_prim = by_id(ext.instance, "x1*x2");
    CHECK_THROWS_AS(coproduct_vI_formula(ext.instance, {not_prim}, {1}, 2), Error);
}

TEST_CASE("signed coproduct identity: formula equals the table coproduct") {
    auto run = [](const auto& field, auto bundle, std::uint32_t n, std::uint32_t m) {
        const auto& inst = bundle.instance;
        std::vector<Element<std::decay_t<decltype(field)>>> prims;
        for (std::uint32_t i = 1; i <= n; ++i)
            prims.push_back(by_id(inst, "x" + std::to_string(i)));
        for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
            std::vector<std::uint32_t> I;
            for (std::uint32_t t = 0; t < n; ++t)
                if (mask & (1ull << t))
                    I.push_back(t + 1);
            auto direct = coproduct(inst, product_vI(inst, prims, I));
            auto formula = coproduct_vI_formula(inst, prims, I, m);
            REQUIRE(direct == formula);
        }
    };
    RationalField Q;
    PrimeField F3(3);
    run(Q, exterior(Q, 6, 6, 21), 6, 1);
    run(F3, exterior(F3, 6, 6, 21), 6, 1);
    run(Q, polynomial(Q, 4, 8, 10), 4, 2);
    run(F3, polynomial(F3, 4, 8, 10), 4, 2);
}

TEST_CASE("check_bialgebra: models pass, an injected sign flip is caught") {
    PrimeField F5(5);
    auto bundle = exterior(F5, 3, 3, 6);
    CHECK(check_bialgebra(bundle.instance).pass);

    // flip the sign of the (x1, x2) term inside Delta(x1*x2)
    const auto& inst = bundle.instance;
    const auto& mod = inst.module();
    auto product = inst.product_table();
    auto coproductt = inst.coproduct_table();
    std::uint32_t i12 = mod.index_of("x1*x2");
    auto key = std::make_pair(mod.index_of("x1"), mod.index_of("x2"));
    auto& entry = coproductt.at(i12).terms.at(key);
    entry = F5.neg(entry);
    std::vector<BasisElement> basis = mod.basis();
    BialgebraInstance<PrimeField> mutant(ModuleWindow<PrimeField>(F5, basis, mod.window()),
                                         product, coproductt);
    CheckReport rep = check_bialgebra(mutant);
    CHECK(!rep.pass);
    CHECK(rep.witness_ids == std::vector<std::string>{"x1", "x2"});
}

TEST_CASE("check_hopf_shape: models pass, a broken unit term is named") {
    RationalField Q;
    auto bundle = exterior(Q, 2, 2, 3);
    CHECK(check_hopf_shape(bundle.instance).pass);

    const auto& mod = bundle.instance.module();
    auto coproductt = bundle.instance.coproduct_table();
    std::uint32_t x1 = mod.index_of("x1");
    coproductt.at(x1).terms.erase({mod.index_of("1"), x1});  // drop 1 (x) x1
    BialgebraInstance<RationalField> mutant(ModuleWindow<RationalField>(Q, mod.basis(), mod.window()),
                                            bundle.instance.product_table(), coproductt);
    CheckReport rep = check_hopf_shape(mutant);
    CHECK(!rep.pass);
    REQUIRE(!rep.witness_ids.empty());
    CHECK(rep.witness_ids[0] == "x1");
}

TEST_CASE("check_spicy_products: a value inflation is named") {
    RationalField Q;
    auto bundle = exterior(Q, 2, 2, 5);
    CHECK(check_spicy_products(bundle.instance).pass);

    const auto& mod = bundle.instance.module();
    std::vector<BasisElement> basis = mod.basis();
    for (auto& b : basis)
        if (b.id == "x1*x2")
            b.value = Rat(5);  // |x1| + |x2| = 3 < 5
    BialgebraInstance<RationalField> mutant(ModuleWindow<RationalField>(Q, basis, mod.window()),
                                            bundle.instance.product_table(),
                                            bundle.instance.coproduct_table());
    CheckReport rep = check_spicy_products(mutant);
    CHECK(!rep.pass);
    CHECK(rep.witness_ids == std::vector<std::string>{"x1", "x2"});
}

TEST_CASE("pbw_independence_check: free, perturbed, and dependent inputs") {
    auto free_case = [](const auto& field) {
        auto bundle = exterior(field, 3, 3, 6);
        std::vector<Element<std::decay_t<decltype(field)>>> prims;
        for (int i = 1; i <= 3; ++i)
            prims.push_back(by_id(bundle.instance, "x" + std::to_string(i)));
        PbwReport rep = pbw_independence_check(bundle.instance, prims, 3);
        CHECK(rep.pass);
        CHECK(rep.total_rank == 8);
    };
    RationalField Q;
    PrimeField F2(2), F3(3);
    free_case(Q);
    free_case(F2);
    free_case(F3);

    auto bundle = exterior(Q, 2, 2, 3);
    Element<RationalField> v2 = by_id(bundle.instance, "x1");
    add_term(Q, v2, bundle.instance.module().index_of("x2"), Q.one());
    PbwReport rep =
        pbw_independence_check(bundle.instance, {by_id(bundle.instance, "x1"), v2}, 2);
    CHECK(rep.pass);
    CHECK(rep.total_rank == 4);

    Element<RationalField> prop = scaled(Q, by_id(bundle.instance, "x1"), Q.from_int(2));
    try {
        pbw_independence_check(bundle.instance, {by_id(bundle.instance, "x1"), prop}, 2);
        FAIL("expected not-independent");
    } catch (const Error& e) {
        CHECK(e.diag() == Diag::not_independent);
    }
}

TEST_CASE("instance construction rejects malformed tables") {
    RationalField Q;
    std::vector<BasisElement> basis{{"1", 0, Rat(0)}, {"x", 1, Rat(1)}, {"y", 1, Rat(1)}};
    WindowLimits window{2, Rat(4)};

    // coproduct entry missing for y
    BialgebraInstance<RationalField>::CoproductTable co;
    TensorElement<RationalField> dx;
    add_term(Q, dx, 0u, 1u, Q.one());
    add_term(Q, dx, 1u, 0u, Q.one());
    co.emplace(1u, dx);
    CHECK_THROWS_AS(BialgebraInstance<RationalField>(
                        ModuleWindow<RationalField>(Q, basis, window), {}, co),
                    SchemaError);

    // degree-breaking product entry
    TensorElement<RationalField> dy;
    add_term(Q, dy, 0u, 2u, Q.one());
    add_term(Q, dy, 2u, 0u, Q.one());
    co.emplace(2u, dy);
    BialgebraInstance<RationalField>::ProductTable bad;
    Element<RationalField> wrong;
    add_term(Q, wrong, 1u, Q.one());  // x has degree 1, pair has degree 2
    bad.emplace(std::make_pair(1u, 2u), wrong);
    CHECK_THROWS_AS(BialgebraInstance<RationalField>(
                        ModuleWindow<RationalField>(Q, basis, window), bad, co),
                    SchemaError);

    // no unit
    std::vector<BasisElement> unitless{{"x", 1, Rat(1)}};
    CHECK_THROWS_AS(BialgebraInstance<RationalField>(
                        ModuleWindow<RationalField>(Q, unitless, window), {}, {}),
                    SchemaError);
}
