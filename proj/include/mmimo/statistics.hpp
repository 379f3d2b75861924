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


// Sample accumulation for the Monte Carlo campaigns: empirical CDFs,
// moments and batch-means standard errors.

#ifndef MMIMO_STATISTICS_HPP
#define MMIMO_STATISTICS_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

namespace mmimo
{
    // Neumaier-compensated running sum.
    class CompensatedSum
    {
    public:
        void add(double x);
        double value() const { return sum_ + comp_; }

    private:
        double sum_ = 0.0;
        double comp_ = 0.0;
    };

    // Welford mean / variance.
    class RunningMoments
    {
    public:
        void add(double x);
        std::int64_t count() const { return n_; }
        double mean() const { return mean_; }
        double variance() const; // unbiased; 0 for n < 2

    private:
        std::int64_t n_ = 0;
        double mean_ = 0.0;
        double m2_ = 0.0;
    };

    struct BatchEstimate
    {
        double value = 0.0;
        double stderr_ = 0.0;
        int batches = 0;
    };

    // Samples in trial order. Batches are contiguous runs of that order, so
    // batch statistics are as deterministic as the samples themselves.
    class EmpiricalDistribution
    {
    public:
        EmpiricalDistribution() = default;
        explicit EmpiricalDistribution(std::vector<double> samples);

        void add(double x);
        std::size_t size() const { return raw_.size(); }
        bool empty() const { return raw_.empty(); }

        const std::vector<double> &samples() const { return raw_; }
        const std::vector<double> &sorted() const;

        // fraction of samples <= x
        double cdf(double x) const;
        // smallest sample s with cdf(s) >= p, p in (0, 1]
        double quantile(double p) const;
        double median() const { return quantile(0.5); }

        double mean() const;
        double variance() const; // unbiased

        // batch means over `batches` contiguous batches (tail samples that do
        // not fill a batch are dropped from the error estimate only)
        BatchEstimate mean_estimate(int batches = 100) const;
        BatchEstimate variance_estimate(int batches = 100) const;

    private:
        std::vector<double> raw_;
        mutable std::vector<double> sorted_;
        mutable bool sorted_valid_ = false;
    };
}

#endif
