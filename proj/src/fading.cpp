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


#include "mmimo/fading.hpp"

#include "mmimo/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>

namespace mmimo
{
    namespace
    {
        using Eigen::Index;
        using Eigen::MatrixXcd;
        using Eigen::VectorXcd;

        // i.i.d. CN(0, 1) entries
        MatrixXcd complex_normals(Index rows, Index cols, RandomStream &rng)
        {
            MatrixXcd h(rows, cols);
            standard_normals(rng, std::span<double>(reinterpret_cast<double *>(h.data()),
                                                    static_cast<std::size_t>(2 * rows * cols)));
            h *= std::sqrt(0.5);
            return h;
        }

        double estimation_error_power(const LargeScaleState &state)
        {
            double total = 0.0;
            for (std::size_t k = 0; k < state.intra.size(); ++k)
                total += state.intra[k].error_power + state.totals[k].error;
            return total;
        }

        struct Accumulator
        {
            CompensatedSum sum;
            RunningMoments moments;

            void add(double x)
            {
                sum.add(x);
                moments.add(x);
            }

            ComponentStat stat() const
            {
                ComponentStat s;
                const auto n = moments.count();
                if (n > 0)
                {
                    s.mean = sum.value() / static_cast<double>(n);
                    s.stderr_ = std::sqrt(moments.variance() / static_cast<double>(n));
                }
                return s;
            }
        };

        double sum_abs2(const Eigen::RowVectorXcd &v)
        {
            return v.cwiseAbs2().sum();
        }
    }

    ChannelDraw estimate_channels(const LargeScaleState &state, const SystemConfig &config, RandomStream &rng)
    {
        const Index M = config.antennas;
        const Index K = state.pilots();
        if (state.outer.size() != state.intra.size())
            throw std::invalid_argument("estimate_channels: state has no per-UE outer gains");
        for (std::size_t k = 0; k < state.outer.size(); ++k)
            if (state.outer[k].size() != state.totals[k].count)
                throw std::invalid_argument("estimate_channels: state has no per-UE outer gains");

        ChannelDraw d;
        d.intra = complex_normals(M, K, rng);
        for (Index k = 0; k < K; ++k)
            d.intra.col(k) *= std::sqrt(state.intra[static_cast<std::size_t>(k)].beta);
        d.outer.resize(static_cast<std::size_t>(K));
        for (std::size_t k = 0; k < state.outer.size(); ++k)
        {
            const auto &group = state.outer[k];
            d.outer[k] = complex_normals(M, static_cast<Index>(group.size()), rng);
            for (std::size_t i = 0; i < group.size(); ++i)
                d.outer[k].col(static_cast<Index>(i)) *= std::sqrt(group[i].beta);
        }

        d.observation = d.intra;
        for (Index k = 0; k < K; ++k)
            d.observation.col(k) += d.outer[static_cast<std::size_t>(k)].rowwise().sum();
        if (!config.interference_limited)
            d.observation += complex_normals(M, K, rng) / std::sqrt(config.pilot_power);

        d.estimate.resize(M, K);
        for (Index k = 0; k < K; ++k)
            d.estimate.col(k) = state.intra[static_cast<std::size_t>(k)].mmse_weight * d.observation.col(k);
        d.intra_error = d.intra - d.estimate;

        d.outer_error.resize(static_cast<std::size_t>(K));
        for (std::size_t k = 0; k < state.outer.size(); ++k)
        {
            const auto &group = state.outer[k];
            d.outer_error[k] = d.outer[k];
            for (std::size_t i = 0; i < group.size(); ++i)
                d.outer_error[k].col(static_cast<Index>(i)) -=
                    group[i].mmse_weight * d.observation.col(static_cast<Index>(k));
        }
        return d;
    }

    Eigen::VectorXcd mrc_receiver(const Eigen::MatrixXcd &estimate, const LargeScaleState &state, int pilot)
    {
        if (pilot < 0 || pilot >= estimate.cols())
            throw std::out_of_range("mrc_receiver: pilot index out of range");
        const VectorXcd g = estimate.col(pilot);
        const double norm = g.norm();
        if (!(norm > 0.0))
            throw std::domain_error("mrc_receiver: zero channel estimate");
        const double M = static_cast<double>(estimate.rows());
        return std::sqrt(state.alpha[static_cast<std::size_t>(pilot)] / M) / norm * g;
    }

    std::optional<ZfVector> zf_receiver(const Eigen::MatrixXcd &estimate, int pilot)
    {
        const Index M = estimate.rows();
        const Index K = estimate.cols();
        if (pilot < 0 || pilot >= K)
            throw std::out_of_range("zf_receiver: pilot index out of range");
        if (M < K)
            throw std::invalid_argument("zf_receiver: need at least as many antennas as pilots");

        const Eigen::HouseholderQR<MatrixXcd> qr(estimate);
        const MatrixXcd R = qr.matrixQR().topLeftCorner(K, K).triangularView<Eigen::Upper>();
        const Eigen::VectorXd diag = R.diagonal().cwiseAbs();
        if (!(diag.minCoeff() > 1e-10 * diag.maxCoeff()))
            return std::nullopt;

        // G0 = Q1 R, so G0 (G0^H G0)^-1 e_k = Q1 R^-H e_k
        VectorXcd e = VectorXcd::Zero(K);
        e(pilot) = 1.0;
        const VectorXcd y = R.adjoint().triangularView<Eigen::Lower>().solve(e);
        VectorXcd padded = VectorXcd::Zero(M);
        padded.head(K) = y;

        ZfVector out;
        out.w = qr.householderQ() * padded;
        out.inv_gram_kk = y.squaredNorm();
        return out;
    }

    const ComponentStat &FadingMeasurement::component(Component c) const
    {
        switch (c)
        {
        case Component::intra:
            return intra;
        case Component::inter:
            return inter;
        case Component::cont:
            break;
        }
        return cont;
    }

    FadingMeasurement measure_components(const LargeScaleState &state, int pilot, Receiver receiver,
                                         const SystemConfig &config, std::int64_t draws, std::uint64_t seed)
    {
        if (draws < 1)
            throw std::invalid_argument("measure_components: need at least one draw");
        if (pilot < 0 || pilot >= state.pilots())
            throw std::out_of_range("measure_components: pilot index out of range");
        if (receiver == Receiver::zf && config.antennas <= state.pilots())
            throw ConfigError("M", "zero forcing requires more antennas than pilots");

        const auto k = static_cast<std::size_t>(pilot);
        const Index K = state.pilots();
        const double M = config.antennas;
        const double beta_x = state.intra[k].beta;
        const double p_eps = estimation_error_power(state) +
                             (config.interference_limited ? 0.0 : 1.0 / config.data_power);
        double reuse_beta_sq = 0.0;
        for (const auto &g : state.outer[k])
            reuse_beta_sq += g.beta * g.beta;

        FadingMeasurement out;
        out.receiver = receiver;
        out.pilot = pilot;
        out.draws = draws;
        Accumulator signal, intra, inter, cont, reuse, sinr, wishart;

        for (std::int64_t t = 0; t < draws; ++t)
        {
            auto rng = substream(seed, static_cast<std::uint64_t>(t), StreamTag::fading);
            const ChannelDraw d = estimate_channels(state, config, rng);

            VectorXcd w;
            double inv_gram_kk = 0.0;
            if (receiver == Receiver::mrc)
                w = mrc_receiver(d.estimate, state, pilot);
            else
            {
                const auto zf = zf_receiver(d.estimate, pilot);
                if (!zf)
                {
                    ++out.discarded;
                    continue;
                }
                w = beta_x * zf->w;
                inv_gram_kk = zf->inv_gram_kk;
            }
            const Eigen::RowVectorXcd wh = w.adjoint();

            // projections of every channel in scope on w
            const Eigen::RowVectorXcd p_est = wh * d.estimate;
            const Eigen::RowVectorXcd p_intra = wh * d.intra;
            const Eigen::RowVectorXcd p_intra_err = wh * d.intra_error;
            const Eigen::RowVectorXcd p_obs = wh * d.observation;

            const double s = std::norm(p_est(pilot));
            double others_est = 0.0; // sum over y != x_k of |w^H g^_y|^2
            double outer_err = 0.0, nonreuse = 0.0, reuse_err = 0.0, reuse_total = 0.0, coherent = 0.0;
            for (Index j = 0; j < K; ++j)
            {
                const auto &group = state.outer[static_cast<std::size_t>(j)];
                if (j != pilot)
                    others_est += std::norm(p_est(j));
                double weight_sq = 0.0;
                for (const auto &g : group)
                    weight_sq += g.mmse_weight * g.mmse_weight;
                others_est += weight_sq * std::norm(p_obs(j));

                if (group.empty())
                    continue;
                const double e = sum_abs2(wh * d.outer_error[static_cast<std::size_t>(j)]);
                outer_err += e;
                if (j == pilot)
                {
                    reuse_err = e;
                    reuse_total = sum_abs2(wh * d.outer[static_cast<std::size_t>(j)]);
                    coherent = weight_sq * std::norm(p_obs(j));
                }
                else
                    nonreuse += sum_abs2(wh * d.outer[static_cast<std::size_t>(j)]);
            }

            signal.add(s);
            reuse.add(reuse_total);
            const double wnorm2 = w.squaredNorm();
            const double direct_sinr = s / (others_est + p_eps * wnorm2);
            sinr.add(direct_sinr);
            if (receiver == Receiver::mrc)
            {
                intra.add(sum_abs2(p_intra) - std::norm(p_intra(pilot)) + std::norm(p_intra_err(pilot)));
                cont.add((M - 1.0) / M * coherent);
                inter.add(nonreuse + reuse_err + coherent / M);
            }
            else
            {
                intra.add(sum_abs2(p_intra_err));
                inter.add(outer_err);
                cont.add(coherent);
                const double simplified =
                    beta_x * beta_x / (reuse_beta_sq + beta_x * beta_x * p_eps * inv_gram_kk);
                out.max_sinr_form_gap =
                    std::max(out.max_sinr_form_gap, std::abs(direct_sinr - simplified) / simplified);
                wishart.add(inv_gram_kk * (M - K) * beta_x * beta_x / state.alpha[k]);
            }
        }

        out.signal = signal.stat();
        out.intra = intra.stat();
        out.inter = inter.stat();
        out.cont = cont.stat();
        out.reuse_group = reuse.stat();
        out.mean_sinr = sinr.stat().mean;
        out.wishart_ratio = wishart.stat();
        return out;
    }
}
