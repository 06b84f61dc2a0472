#include "catch_amalgamated.hpp"

#include "tfdelphi/linguistic.hpp"

using namespace tfdelphi;
using Catch::Matchers::WithinAbs;

namespace {

const TermSet S3(3);
const TermSet S5(5);
const TermSet S7(7);
const TermSet S13(13);

} // namespace

TEST_CASE("term sets know their largest index")
{
    CHECK(S7.granularity() == 7);
    CHECK(S7.delta() == 6);
    CHECK(S13.delta() == 12);
    CHECK_THROWS_AS(TermSet(1), DomainError);
    CHECK_THROWS_AS(TermSet(0), DomainError);
}

TEST_CASE("2-tuple construction enforces its invariants")
{
    CHECK_NOTHROW(TwoTuple(6, -0.5, S7));
    CHECK_THROWS_AS(TwoTuple(7, 0.0, S7), DomainError);
    CHECK_THROWS_AS(TwoTuple(-1, 0.0, S7), DomainError);
    CHECK_THROWS_AS(TwoTuple(3, 0.5, S7), DomainError);
    CHECK_THROWS_AS(TwoTuple(3, -0.51, S7), DomainError);
    // beta would leave [0, 6]
    CHECK_THROWS_AS(TwoTuple(6, 0.2, S7), DomainError);
    CHECK_THROWS_AS(TwoTuple(0, -0.2, S7), DomainError);
}

TEST_CASE("delta_of rounds to the nearest label")
{
    const auto z = delta_of(9.2615, S13);
    CHECK(z.index() == 9);
    CHECK_THAT(z.alpha(), WithinAbs(0.2615, 1e-12));

    CHECK(delta_of(0.0, S5) == TwoTuple(0, 0.0, S5));

    const auto is = delta_of(5.893, S7);
    CHECK(is.index() == 6);
    CHECK_THAT(is.alpha(), WithinAbs(-0.107, 1e-12));
}

TEST_CASE("delta_of sends halves to the next label")
{
    const auto t = delta_of(2.5, S7);
    CHECK(t.index() == 3);
    CHECK(t.alpha() == -0.5);
    CHECK(delta_of(0.5, S3).index() == 1);
    CHECK(delta_of(6.0, S7) == TwoTuple(6, 0.0, S7));
}

TEST_CASE("delta_of rejects values off the scale")
{
    CHECK_THROWS_AS(delta_of(-0.01, S7), DomainError);
    CHECK_THROWS_AS(delta_of(6.01, S7), DomainError);
    CHECK_THROWS_AS(delta_of(std::nan(""), S7), DomainError);
    try {
        delta_of(7.5, S7);
        FAIL("expected DomainError");
    } catch (const DomainError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("7.5") != std::string::npos);
        CHECK(msg.find("6") != std::string::npos);
    }
}

TEST_CASE("delta_inv is index plus translation")
{
    CHECK_THAT(delta_inv(TwoTuple(8, 0.2, S13)), WithinAbs(8.2, 1e-12));
    CHECK(delta_inv(TwoTuple(0, 0.0, S7)) == 0.0);
    CHECK_THAT(delta_inv(TwoTuple(6, -0.107, S7)), WithinAbs(5.893, 1e-12));
}

TEST_CASE("from_label adds a zero translation")
{
    CHECK(from_label(1, S3) == TwoTuple(1, 0.0, S3));
    CHECK(from_label(0, S5) == TwoTuple(0, 0.0, S5));
    CHECK(from_label(6, S7) == TwoTuple(6, 0.0, S7));
    CHECK_THROWS_AS(from_label(5, S5), DomainError);
}

TEST_CASE("transform between levels")
{
    CHECK(transform(from_label(1, S3), S3, S13) == TwoTuple(6, 0.0, S13));
    CHECK(transform(from_label(3, S5), S5, S13) == TwoTuple(9, 0.0, S13));
    CHECK(transform(from_label(4, S7), S7, S13) == TwoTuple(8, 0.0, S13));

    const auto is = transform(delta_of(9.263, S13), S13, S7);
    CHECK(is.index() == 5);
    CHECK_THAT(is.alpha(), WithinAbs(-0.369, 5e-4));

    CHECK_THROWS_AS(transform(from_label(1, S3), S5, S13), ContractError);
}

TEST_CASE("weighted extended mean")
{
    const std::vector<TwoTuple> v = {from_label(6, S13), from_label(9, S13), from_label(8, S13)};
    const std::vector<double> w = {0.2, 0.6, 0.2};
    const auto m = weighted_extended_mean(v, w);
    CHECK(m.index() == 8);
    CHECK_THAT(m.alpha(), WithinAbs(0.2, 1e-12));

    SECTION("equal inputs give the input back")
    {
        const std::vector<TwoTuple> same(4, from_label(5, S13));
        const std::vector<double> odd = {0.1, 3.0, 0.0, 7.5};
        CHECK(weighted_extended_mean(same, odd) == from_label(5, S13));
    }

    SECTION("clarity column of the first-round item 27 panel")
    {
        const std::vector<TwoTuple> col = {from_label(12, S13), from_label(12, S13), from_label(12, S13),
                                           from_label(10, S13), from_label(8, S13),  from_label(12, S13),
                                           from_label(12, S13), from_label(8, S13),  from_label(12, S13)};
        const std::vector<double> d4 = {0.121, 0.096, 0.089, 0.127, 0.115, 0.127, 0.115, 0.102, 0.108};
        const auto y = weighted_extended_mean(col, d4);
        CHECK(y.index() == 11);
        CHECK_THAT(y.alpha(), WithinAbs(-0.122, 5e-4));
        CHECK_THAT(y.beta(), WithinAbs(10.878, 5e-4));
    }

    SECTION("raw and normalised weights agree")
    {
        const std::vector<double> raw = {1.0, 3.0, 1.0};
        CHECK_THAT(weighted_extended_mean(v, raw).beta(), WithinAbs(m.beta(), 1e-12));
    }

    SECTION("errors")
    {
        const std::vector<TwoTuple> none;
        const std::vector<double> nw;
        CHECK_THROWS_AS(weighted_extended_mean(none, nw), DomainError);
        const std::vector<double> zeros = {0.0, 0.0, 0.0};
        CHECK_THROWS_AS(weighted_extended_mean(v, zeros), DomainError);
        const std::vector<double> short_w = {1.0, 1.0};
        CHECK_THROWS_AS(weighted_extended_mean(v, short_w), ContractError);
        const std::vector<double> negative = {1.0, -1.0, 1.0};
        CHECK_THROWS_AS(weighted_extended_mean(v, negative), DomainError);
        const std::vector<TwoTuple> mixed = {from_label(1, S7), from_label(1, S13)};
        const std::vector<double> two = {1.0, 1.0};
        CHECK_THROWS_AS(weighted_extended_mean(mixed, two), ContractError);
    }
}

TEST_CASE("unified level is the LCM of the deltas")
{
    CHECK(unified_level({3, 5, 7}).granularity() == 13);
    CHECK(unified_level({3}).granularity() == 3);
    CHECK(unified_level({3, 5}).granularity() == 5);
    CHECK(unified_level({5, 7, 3, 7}).granularity() == 13);
    const std::vector<int> none;
    CHECK_THROWS_AS(unified_level(none), DomainError);
}

TEST_CASE("standard hierarchy")
{
    const auto& h = ExtendedHierarchy::standard();
    CHECK(h.unified() == S13);
    CHECK(h.reporting() == S7);
    CHECK(h.contains(5));
    CHECK_FALSE(h.contains(9));
    CHECK(h.modal_point(1, S3) == 6);
    CHECK(h.modal_point(3, S5) == 9);
    CHECK(h.modal_point(4, S7) == 8);
    CHECK_THROWS_AS(h.modal_point(1, TermSet(9)), ContractError);
    CHECK(h.to_unified(from_label(2, S5)) == from_label(6, S13));
    CHECK(h.to_reporting(from_label(1, S3)) == from_label(3, S7));
}
