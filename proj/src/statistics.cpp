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


#include "mmimo/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mmimo
{
    void CompensatedSum::add(double x)
    {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }

    void RunningMoments::add(double x)
    {
        ++n_;
        const double delta = x - mean_;
        mean_ += delta / static_cast<double>(n_);
        m2_ += delta * (x - mean_);
    }

    double RunningMoments::variance() const
    {
        return n_ < 2 ? 0.0 : m2_ / static_cast<double>(n_ - 1);
    }

    EmpiricalDistribution::EmpiricalDistribution(std::vector<double> samples) : raw_(std::move(samples)) {}

    void EmpiricalDistribution::add(double x)
    {
        raw_.push_back(x);
        sorted_valid_ = false;
    }

    const std::vector<double> &EmpiricalDistribution::sorted() const
    {
        if (!sorted_valid_)
        {
            sorted_ = raw_;
            std::sort(sorted_.begin(), sorted_.end());
            sorted_valid_ = true;
        }
        return sorted_;
    }

    double EmpiricalDistribution::cdf(double x) const
    {
        const auto &s = sorted();
        if (s.empty())
            throw std::logic_error("cdf of an empty distribution");
        const auto it = std::upper_bound(s.begin(), s.end(), x);
        return static_cast<double>(it - s.begin()) / static_cast<double>(s.size());
    }

    double EmpiricalDistribution::quantile(double p) const
    {
        const auto &s = sorted();
        if (s.empty())
            throw std::logic_error("quantile of an empty distribution");
        if (!(p > 0.0 && p <= 1.0))
            throw std::invalid_argument("quantile: p must lie in (0, 1]");
        const double n = static_cast<double>(s.size());
        auto idx = static_cast<std::size_t>(std::ceil(p * n - 1e-9 * n));
        idx = std::clamp<std::size_t>(idx, 1, s.size());
        return s[idx - 1];
    }

    double EmpiricalDistribution::mean() const
    {
        if (raw_.empty())
            throw std::logic_error("mean of an empty distribution");
        CompensatedSum acc;
        for (double x : raw_)
            acc.add(x);
        return acc.value() / static_cast<double>(raw_.size());
    }

    double EmpiricalDistribution::variance() const
    {
        if (raw_.size() < 2)
            return 0.0;
        const double m = mean();
        CompensatedSum acc;
        for (double x : raw_)
            acc.add((x - m) * (x - m));
        return acc.value() / static_cast<double>(raw_.size() - 1);
    }

    namespace
    {
        template <class Stat>
        BatchEstimate batch_estimate(const std::vector<double> &x, int batches, double whole, Stat stat)
        {
            BatchEstimate e;
            e.value = whole;
            const std::size_t per = batches > 0 ? x.size() / static_cast<std::size_t>(batches) : 0;
            if (batches < 2 || per < 2)
                throw std::invalid_argument("batch estimate: need at least two batches of two samples");
            e.batches = batches;
            RunningMoments across;
            for (int b = 0; b < batches; ++b)
            {
                const auto first = x.begin() + static_cast<std::ptrdiff_t>(per * static_cast<std::size_t>(b));
                across.add(stat(EmpiricalDistribution(std::vector<double>(first, first + static_cast<std::ptrdiff_t>(per)))));
            }
            e.stderr_ = std::sqrt(across.variance() / batches);
            return e;
        }
    }

    BatchEstimate EmpiricalDistribution::mean_estimate(int batches) const
    {
        return batch_estimate(raw_, batches, mean(), [](const EmpiricalDistribution &d) { return d.mean(); });
    }

    BatchEstimate EmpiricalDistribution::variance_estimate(int batches) const
    {
        return batch_estimate(raw_, batches, variance(), [](const EmpiricalDistribution &d) { return d.variance(); });
    }
}
