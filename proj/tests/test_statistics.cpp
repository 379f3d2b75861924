// SPDX-License-Identifier: Apache-2.0
//
// mmimo-interference: uplink interference simulator for multi-cell massive MIMO
// Copyright (C) 2026 The mmimo-interference authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


#include "mmimo/rng.hpp"
#include "mmimo/statistics.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace mmimo;

TEST_CASE("compensated sum keeps the small terms")
{
    CompensatedSum s;
    s.add(1e16);
    s.add(1.0);
    s.add(-1e16);
    CHECK(s.value() == 1.0);

    CompensatedSum t;
    for (int i = 0; i < 1000000; ++i)
        t.add(0.1);
    CHECK(t.value() == doctest::Approx(100000.0).epsilon(1e-15));
}

TEST_CASE("running moments")
{
    RunningMoments m;
    CHECK(m.variance() == 0.0);
    for (double x : {2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0})
        m.add(x);
    CHECK(m.count() == 8);
    CHECK(m.mean() == 5.0);
    CHECK(m.variance() == doctest::Approx(32.0 / 7.0).epsilon(1e-15));
}

TEST_CASE("empirical CDF and quantiles")
{
    EmpiricalDistribution d({3.0, 1.0, 2.0, 5.0, 4.0});
    CHECK(d.size() == 5);
    CHECK(d.samples().front() == 3.0); // trial order kept
    CHECK(d.sorted().front() == 1.0);
    CHECK(d.cdf(0.5) == 0.0);
    CHECK(d.cdf(1.0) == 0.2);
    CHECK(d.cdf(3.5) == 0.6);
    CHECK(d.cdf(5.0) == 1.0);
    CHECK(d.quantile(0.2) == 1.0);
    CHECK(d.quantile(0.21) == 2.0);
    CHECK(d.median() == 3.0);
    CHECK(d.quantile(1.0) == 5.0);
    CHECK_THROWS(d.quantile(0.0));
    CHECK_THROWS(d.quantile(1.5));

    d.add(0.0); // cache invalidated
    CHECK(d.sorted().front() == 0.0);
    CHECK(d.cdf(0.0) == doctest::Approx(1.0 / 6.0));

    RandomStream rng(5);
    EmpiricalDistribution e;
    for (int i = 0; i < 5000; ++i)
        e.add(rng.uniform());
    double prev = 0.0;
    for (double x = -0.1; x <= 1.1; x += 0.01)
    {
        const double c = e.cdf(x);
        CHECK(c >= prev);
        prev = c;
    }
    CHECK(prev == 1.0);
    for (double p : {0.01, 0.25, 0.5, 0.9, 0.999})
    {
        const double q = e.quantile(p);
        CHECK(e.cdf(q) >= p);
        CHECK(e.cdf(std::nextafter(q, -1.0)) < p);
    }
}

TEST_CASE("batch moments match the streaming accumulator")
{
    RandomStream rng(11);
    std::vector<double> z(1000000);
    standard_normals(rng, z);
    EmpiricalDistribution d;
    RunningMoments r;
    for (double x : z)
    {
        const double v = std::exp(0.9 * x) * 1e-9; // heavy-ish, small scale
        d.add(v);
        r.add(v);
    }
    CHECK(std::abs(d.mean() - r.mean()) <= 1e-8 * r.mean());
    CHECK(std::abs(d.variance() - r.variance()) <= 1e-8 * r.variance());
}

TEST_CASE("batch-means standard errors")
{
    RandomStream rng(12);
    std::vector<double> z(200000);
    standard_normals(rng, z);
    const EmpiricalDistribution d(z);
    const BatchEstimate m = d.mean_estimate();
    CHECK(m.batches == 100);
    CHECK(m.value == doctest::Approx(d.mean()).epsilon(1e-12));
    CHECK(m.stderr_ == doctest::Approx(1.0 / std::sqrt(200000.0)).epsilon(0.2));
    CHECK(std::abs(m.value) < 4 * m.stderr_);

    const BatchEstimate v = d.variance_estimate();
    CHECK(v.value == doctest::Approx(d.variance()).epsilon(1e-12));
    CHECK(v.stderr_ == doctest::Approx(std::sqrt(2.0 / 200000.0)).epsilon(0.25));
    CHECK(std::abs(v.value - 1.0) < 4 * v.stderr_);

    CHECK_THROWS(d.mean_estimate(1));
    const EmpiricalDistribution tiny({1.0, 2.0, 3.0});
    CHECK_THROWS(tiny.mean_estimate(2));
}
