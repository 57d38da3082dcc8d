#include <doctest.h>

#include <random>

#include "test_util.hpp"
#include "tlra/tables.hpp"

using namespace tlra;

TEST_CASE("weight vector validation") {
    Vector good(3);
    good << 0.2, 0.3, 0.5;
    WeightVector w(good, {"a", "b", "c"});
    CHECK(w.size() == 3);
    CHECK(w[2] == 0.5);

    Vector negative(2);
    negative << 1.5, -0.5;
    CHECK_THROWS_AS(WeightVector(negative, {}), WeightError);

    Vector off_sum(2);
    off_sum << 0.5, 0.6;
    CHECK_THROWS_AS(WeightVector(off_sum, {}), WeightError);

    Vector zero_entry(2);
    zero_entry << 0.0, 1.0;
    CHECK_THROWS_AS(WeightVector(zero_entry, {}), WeightError);

    CHECK_THROWS_AS(WeightVector(good, {"only", "two"}), DimensionMismatchError);

    WeightVector u = WeightVector::uniform(4);
    for (Index i = 0; i < 4; ++i) CHECK(u[i] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(u.labels()[3] == "4");
}

TEST_CASE("marginals and proportions") {
    Matrix m(2, 2);
    m << 1, 2, 3, 4;
    Marginals mg = marginals(m);
    CHECK(mg.row_sums[0] == 3.0);
    CHECK(mg.row_sums[1] == 7.0);
    CHECK(mg.col_sums[0] == 4.0);
    CHECK(mg.col_sums[1] == 6.0);
    CHECK(mg.total == 10.0);
    CHECK(proportions(m)(1, 1) == 0.4);

    CHECK_THROWS_AS(marginals(Matrix::Zero(2, 3)), ZeroTotalError);
}

TEST_CASE("elementary table validation") {
    Matrix m(2, 2);
    m << 1, 0, 2, 3;
    ElementaryTable t(m, {"r1", "r2"}, {"c1", "c2"});
    CHECK_FALSE(t.all_positive());

    m(0, 1) = 0.5;
    CHECK(ElementaryTable(m, {}, {}).all_positive());

    m(1, 0) = -1.0;
    CHECK_THROWS_AS(ElementaryTable(m, {}, {}), NegativeEntryError);

    CHECK_THROWS_AS(ElementaryTable(Matrix::Ones(1, 4), {}, {}), DimensionMismatchError);

    Matrix bad = Matrix::Ones(2, 2);
    bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(ElementaryTable(bad, {}, {}), NonFiniteError);
}

TEST_CASE("indicator matrix validation") {
    Matrix z(3, 5);
    z << 1, 0, 0, 1, 0,
         0, 1, 1, 0, 0,
         1, 0, 0, 0, 1;
    IndicatorMatrix ind(z, {"a1", "a2", "b1", "b2", "b3"}, {2, 3});
    CHECK(ind.q() == 2);
    CHECK(ind.categories() == 5);
    Vector sizes = ind.category_sizes();
    CHECK(sizes[0] == 2.0);
    CHECK(sizes[3] == 1.0);

    // every covariate block's column sums add up to the row count
    Index offset = 0;
    for (Index b : ind.block_sizes()) {
        CHECK(sizes.segment(offset, b).sum() == static_cast<double>(ind.rows()));
        offset += b;
    }

    Matrix two_in_block = z;
    two_in_block(0, 1) = 1.0;  // two ones inside block 1
    CHECK_THROWS_AS(IndicatorMatrix(two_in_block, {}, {2, 3}), BlockViolationError);

    Matrix not_binary = z;
    not_binary(2, 4) = 0.5;
    CHECK_THROWS_AS(IndicatorMatrix(not_binary, {}, {2, 3}), ParseError);

    CHECK_THROWS_AS(IndicatorMatrix(z, {}, {2, 2}), BlockSpecMismatchError);
    CHECK_THROWS_AS(IndicatorMatrix(z, {}, {}), BlockSpecMismatchError);
}

TEST_CASE("indicator from categorical codes") {
    std::vector<Covariate> covs = {{"A", {"a", "b"}}, {"B", {"x"}}};
    std::vector<std::vector<std::string>> codes = {{"a", "x"}, {"b", "x"}};
    IndicatorMatrix ind = indicator_from_categorical(codes, covs);
    CHECK(ind.rows() == 2);
    CHECK(ind.categories() == 3);
    CHECK(ind.values()(0, 0) == 1.0);
    CHECK(ind.values()(0, 1) == 0.0);
    CHECK(ind.values()(0, 2) == 1.0);
    CHECK(ind.values()(1, 1) == 1.0);
    CHECK(ind.category_labels()[0] == "A=a");
    CHECK(ind.category_labels()[2] == "B=x");

    codes[1][0] = "zzz";
    CHECK_THROWS_AS(indicator_from_categorical(codes, covs), UnknownLevelError);
}

TEST_CASE("aggregation with identity grouping leaves the table unchanged") {
    Matrix x(2, 2);
    x << 2, 4, 6, 8;
    Matrix z = Matrix::Identity(2, 2);
    ElementaryTable ex(x, {"r1", "r2"}, {"c1", "c2"});
    IndicatorMatrix iz(z, {"g1", "g2"}, {2});
    AggregateTable t = aggregate(ex, iz, WeightVector::uniform(2));
    CHECK(t.values() == x);
    CHECK(t.q() == 1);
    REQUIRE(t.origin().has_value());
    CHECK(t.origin()->elementary_rows == 2);
    CHECK(t.origin()->uniform_row_weights);
}

TEST_CASE("aggregation equals the parallel triple loop") {
    std::mt19937_64 rng(2024);
    Matrix x = random_positive(rng, 6, 3);
    Matrix z(6, 4);
    z << 1, 0, 1, 0,
         0, 1, 1, 0,
         1, 0, 0, 1,
         0, 1, 0, 1,
         1, 0, 1, 0,
         0, 1, 0, 1;
    ElementaryTable ex(x, {}, {});
    IndicatorMatrix iz(z, {}, {2, 2});

    SUBCASE("uniform weights give within-category totals") {
        AggregateTable t = aggregate(ex, iz, WeightVector::uniform(6));
        for (Index k = 0; k < 4; ++k) {
            for (Index j = 0; j < 3; ++j) {
                double total = 0.0;
                for (Index i = 0; i < 6; ++i)
                    if (z(i, k) == 1.0) total += x(i, j);
                CHECK(t.values()(k, j) == doctest::Approx(total).epsilon(1e-13));
            }
        }
        // grand total counts every row once per covariate
        CHECK(t.values().sum() ==
              doctest::Approx(2.0 * x.sum()).epsilon(1e-12));
    }

    SUBCASE("general weights scale rows before grouping") {
        Vector raw(6);
        raw << 1, 2, 3, 4, 5, 6;
        WeightVector w(raw / raw.sum(), {});
        AggregateTable t = aggregate(ex, iz, w);
        for (Index k = 0; k < 4; ++k) {
            for (Index j = 0; j < 3; ++j) {
                double acc = 0.0;
                for (Index i = 0; i < 6; ++i) acc += z(i, k) * w[i] * x(i, j);
                CHECK(t.values()(k, j) == doctest::Approx(6.0 * acc).epsilon(1e-13));
            }
        }
        REQUIRE(t.origin().has_value());
        CHECK_FALSE(t.origin()->uniform_row_weights);
    }

    SUBCASE("row count mismatch is rejected") {
        Matrix z5 = z.topRows(5);
        IndicatorMatrix short_z(z5, {}, {2, 2});
        CHECK_THROWS_AS(aggregate(ex, short_z, WeightVector::uniform(5)),
                        DimensionMismatchError);
    }
}

TEST_CASE("weight schemes") {
    SUBCASE("elementary uniform") {
        ElementaryTable x(Matrix::Ones(4, 2), {}, {});
        WeightPair p = elementary_uniform_weights(x);
        CHECK(p.rows.size() == 4);
        CHECK(p.rows[0] == 0.25);
        CHECK(p.cols[1] == 0.5);
    }

    SUBCASE("aggregate marginal rows from category sizes") {
        Matrix z(8, 4);
        z.setZero();
        // category sizes 2, 2, 1, 3
        z(0, 0) = z(1, 0) = 1;
        z(2, 1) = z(3, 1) = 1;
        z(4, 2) = 1;
        z(5, 3) = z(6, 3) = z(7, 3) = 1;
        IndicatorMatrix iz(z, {}, {4});
        AggregateTable t(Matrix::Ones(4, 3), {}, {});
        WeightPair p = aggregate_marginal_weights(iz, t);
        CHECK(p.rows[0] == 0.25);
        CHECK(p.rows[1] == 0.25);
        CHECK(p.rows[2] == 0.125);
        CHECK(p.rows[3] == 0.375);
        CHECK(p.cols[0] == doctest::Approx(1.0 / 3).epsilon(1e-15));
    }

    SUBCASE("aggregate uniform") {
        AggregateTable t(Matrix::Ones(5, 3), {}, {});
        WeightPair p = aggregate_uniform_weights(t);
        CHECK(p.rows[0] == 0.2);
        CHECK(p.cols[2] == doctest::Approx(1.0 / 3).epsilon(1e-15));
    }

    SUBCASE("column marginal pair") {
        Matrix t(2, 2);
        t << 1, 3, 1, 3;
        AggregateTable at(t, {}, {});
        WeightPair p = column_marginal_weights(at);
        CHECK(p.cols[0] == 0.25);
        CHECK(p.cols[1] == 0.75);
        CHECK(p.rows[0] == 0.5);

        Matrix zero_col(2, 2);
        zero_col << 1, 0, 1, 0;
        AggregateTable bad(zero_col, {}, {});
        CHECK_THROWS_AS(column_marginal_weights(bad), WeightError);
    }
}

TEST_CASE("csv loading round trip") {
    auto dir = test_dir("tables_csv");

    SUBCASE("elementary") {
        write_text(dir / "x.csv", "id,c1,c2\nr1,1.5,2\nr2,3,4.25\n");
        ElementaryTable t = load_elementary(dir / "x.csv");
        CHECK(t.rows() == 2);
        CHECK(t.values()(1, 1) == 4.25);
        CHECK(t.row_labels()[0] == "r1");
        CHECK(t.col_labels()[1] == "c2");

        write_labeled_csv(dir / "x2.csv",
                          LabeledMatrix{t.row_labels(), t.col_labels(), t.values()});
        ElementaryTable again = load_elementary(dir / "x2.csv");
        CHECK(again.values() == t.values());
    }

    SUBCASE("ragged row rejected") {
        write_text(dir / "bad.csv", "id,c1,c2\nr1,1\n");
        CHECK_THROWS_AS(load_elementary(dir / "bad.csv"), ParseError);
    }

    SUBCASE("non-numeric cell rejected") {
        write_text(dir / "nan.csv", "id,c1,c2\nr1,1,x\nr2,2,3\n");
        CHECK_THROWS_AS(load_elementary(dir / "nan.csv"), ParseError);
    }

    SUBCASE("indicator") {
        write_text(dir / "z.csv", "id,a1,a2,b1\nr1,1,0,1\nr2,0,1,1\n");
        IndicatorMatrix z = load_indicator(dir / "z.csv", {2, 1});
        CHECK(z.q() == 2);
        CHECK(z.category_labels()[2] == "b1");
    }

    SUBCASE("aggregate loaded directly has no origin") {
        write_text(dir / "t.csv", "id,c1,c2\ng1,5,6\ng2,7,8\n");
        AggregateTable t = load_aggregate(dir / "t.csv");
        CHECK(t.q() == 1);
        CHECK_FALSE(t.origin().has_value());
    }
}

TEST_CASE("aggregate then marginals keeps the covariate-scaled total") {
    std::mt19937_64 rng(77);
    Matrix x = random_positive(rng, 9, 4);
    Matrix z = Matrix::Zero(9, 5);
    for (Index i = 0; i < 9; ++i) {
        z(i, i % 2) = 1.0;
        z(i, 2 + i % 3) = 1.0;
    }
    ElementaryTable ex(x, {}, {});
    IndicatorMatrix iz(z, {}, {2, 3});
    AggregateTable t = aggregate(ex, iz, WeightVector::uniform(9));
    CHECK(t.marginals().total ==
          doctest::Approx(2.0 * ex.marginals().total).epsilon(1e-12));
}
