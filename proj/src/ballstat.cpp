#include "bdcp/ballstat.hpp"

#include <algorithm>
#include <cstring>
#include <numeric>

namespace bdcp {

namespace {

void check_segment(const DistanceMatrix &d, Segment seg) {
    if (seg.start >= seg.end || seg.end > d.size())
        throw InvalidInput("invalid segment bounds");
}

// Final combine shared by every evaluation path. `acc` is the exact integer
//   sum over window pairs (i,j) of (cur_ij * Lp - tot_ij * Mp)^2
// where cur counts the left part and tot the whole window; dividing by
// (Mp*Np)^2 turns each term into (C1_ij - C2_ij)^2 and the statistic is
// (Mp*Np / Lp^3) times that sum.
inline double cell_value(double acc, std::size_t mp, std::size_t np) {
    const double lp = static_cast<double>(mp + np);
    return acc / (lp * lp * lp * static_cast<double>(mp) * static_cast<double>(np));
}

// Incremental sweep over the (split, window) grid of one segment, in local
// boundary coordinates: window length lp in [2m, n], split mp in [m, lp-m].
//
// Matrices over all ordered pairs (i, j), stored row-major as uint16:
//   tot[i][j]  = #{u < lp : rank_i[u] <= rank_i[j]}   (window ball counts)
//   base[i][j] = the same restricted to u < m          (fixed left floor)
//   cur[i][j]  = the same restricted to u < mp         (sweeping left part)
// Growing the window or the left part by one point costs one rank comparison
// per pair. Three moment sums over the window pairs,
//   s_cc = sum cur^2, s_ct = sum cur*tot, s_tt = sum tot^2,
// are maintained alongside, which makes each cell evaluation O(1):
//   acc = lp^2*s_cc - 2*lp*mp*s_ct + mp^2*s_tt.
class ScanEngine {
  public:
    explicit ScanEngine(const RankTable &table, std::size_t min_seg)
        : rt_(table),
          n_(table.size()),
          m_(min_seg),
          tot_(n_ * n_),
          base_(n_ * n_),
          cur_(n_ * n_) {}

    // Runs the sweep, calling sink(mp, lp, value) for every admissible cell
    // accepted by both selectors, in ascending (lp, mp) order. Windows are
    // only grown up to l_max.
    template <typename LSel, typename MSel, typename Sink>
    void run(std::size_t l_max, LSel &&l_select, MSel &&m_select, Sink &&sink) {
        std::fill(tot_.begin(), tot_.end(), 0);
        std::fill(base_.begin(), base_.end(), 0);
        for (std::size_t q = 0; q < m_; ++q) add_point(base_.data(), q);

        for (std::size_t lp = 1; lp <= l_max; ++lp) {
            // Every row, not just the current window: pairs that only enter
            // later windows still need this point counted.
            add_point(tot_.data(), lp - 1);
            if (lp < 2 * m_ || !l_select(lp)) continue;

            // Fresh left part of size m for this window.
            std::memcpy(cur_.data(), base_.data(), n_ * n_ * sizeof(std::uint16_t));
            rebuild_moments(lp);

            const std::size_t mp_last = lp - m_;
            for (std::size_t mp = m_; mp <= mp_last; ++mp) {
                if (mp > m_) advance_split(mp - 1, lp);
                if (!m_select(mp, lp)) continue;
                const auto lpw = static_cast<unsigned __int128>(lp);
                const auto mpw = static_cast<unsigned __int128>(mp);
                const unsigned __int128 acc =
                    lpw * lp * s_cc_ + mpw * mp * s_tt_ - 2 * lpw * mp * s_ct_;
                sink(mp, lp, cell_value(static_cast<double>(acc), mp, lp - mp));
            }
        }
    }

  private:
    // Adds local point q to the counts in `counts` for every ordered pair:
    // counts[i][j] += (rank_i[q] <= rank_i[j]).
    void add_point(std::uint16_t *counts, std::size_t q) {
        for (std::size_t i = 0; i < n_; ++i) {
            const std::uint16_t *rank = rt_.ranks(i).data();
            const std::uint16_t c = rank[q];
            std::uint16_t *row = counts + i * n_;
            for (std::size_t j = 0; j < n_; ++j) row[j] += (rank[j] >= c);
        }
    }

    // Adds local point q to the left part: updates cur_ and the cur-dependent
    // moments over the window pairs (i, j < lp). Row partials stay in 32 bits
    // (counts are < 2^16, row lengths < 2^16, so products and row sums fit),
    // which keeps the loop vectorizable.
    void advance_split(std::size_t q, std::size_t lp) {
        std::uint64_t d_cnt = 0, d_cur = 0, d_tot = 0;
        for (std::size_t i = 0; i < lp; ++i) {
            const std::uint16_t *rank = rt_.ranks(i).data();
            const std::uint16_t c = rank[q];
            std::uint16_t *cur = cur_.data() + i * n_;
            const std::uint16_t *tot = tot_.data() + i * n_;
            std::uint32_t row_cnt = 0, row_cur = 0, row_tot = 0;
            for (std::size_t j = 0; j < lp; ++j) {
                const std::uint16_t delta = rank[j] >= c;
                row_cnt += delta;
                row_cur += static_cast<std::uint32_t>(delta * cur[j]);
                row_tot += static_cast<std::uint32_t>(delta * tot[j]);
                cur[j] += delta;
            }
            d_cnt += row_cnt;
            d_cur += row_cur;
            d_tot += row_tot;
        }
        s_cc_ += 2 * static_cast<unsigned __int128>(d_cur) + d_cnt;
        s_ct_ += d_tot;
    }

    void rebuild_moments(std::size_t lp) {
        unsigned __int128 cc = 0, ct = 0, tt = 0;
        for (std::size_t i = 0; i < lp; ++i) {
            const std::uint16_t *cur = cur_.data() + i * n_;
            const std::uint16_t *tot = tot_.data() + i * n_;
            std::uint64_t row_cc = 0, row_ct = 0, row_tt = 0;
            for (std::size_t j = 0; j < lp; ++j) {
                const std::uint32_t c = cur[j];
                const std::uint32_t t = tot[j];
                row_cc += c * c;
                row_ct += c * t;
                row_tt += t * t;
            }
            cc += row_cc;
            ct += row_ct;
            tt += row_tt;
        }
        s_cc_ = cc;
        s_ct_ = ct;
        s_tt_ = tt;
    }

    const RankTable &rt_;
    std::size_t n_;
    std::size_t m_;
    std::vector<std::uint16_t> tot_, base_, cur_;
    unsigned __int128 s_cc_ = 0, s_ct_ = 0, s_tt_ = 0;
};

struct BestCell {
    bool found = false;
    std::size_t mp = 0, lp = 0;
    double value = 0.0;

    void offer(std::size_t mp_new, std::size_t lp_new, double v) {
        if (!found || v > value ||
            (v == value &&
             (lp_new < lp || (lp_new == lp && mp_new < mp)))) {
            found = true;
            mp = mp_new;
            lp = lp_new;
            value = v;
        }
    }
};

}  // namespace

bool ball_indicator(const DistanceMatrix &d, std::size_t center,
                    std::size_t radius_point, std::size_t query) {
    const std::size_t n = d.size();
    if (center >= n || radius_point >= n || query >= n)
        throw std::out_of_range("ball_indicator: index out of range");
    return d.at(center, query) <= d.at(center, radius_point);
}

double detection_stat_naive(const DistanceMatrix &d, Segment seg, std::size_t split) {
    check_segment(d, seg);
    if (split <= seg.start || split >= seg.end)
        throw InvalidInput("detection_stat_naive: both sides of the split must be nonempty");

    const std::size_t mp = split - seg.start;
    const std::size_t np = seg.end - split;
    const std::size_t n = seg.length();

    double acc = 0.0;
    for (std::size_t i = seg.start; i < seg.end; ++i) {
        for (std::size_t j = seg.start; j < seg.end; ++j) {
            const double radius = d.at(i, j);
            std::size_t left = 0, right = 0;
            for (std::size_t u = seg.start; u < split; ++u)
                left += d.at(i, u) <= radius;
            for (std::size_t u = split; u < seg.end; ++u)
                right += d.at(i, u) <= radius;
            const double diff = static_cast<double>(left) / static_cast<double>(mp) -
                                static_cast<double>(right) / static_cast<double>(np);
            acc += diff * diff;
        }
    }
    const double nn = static_cast<double>(n);
    return acc * static_cast<double>(mp) * static_cast<double>(np) / (nn * nn * nn);
}

RankTable build_rank_table(const DistanceMatrix &d, Segment seg) {
    check_segment(d, seg);
    const std::size_t n = seg.length();
    if (n > 65535) throw InvalidInput("build_rank_table: segment longer than 65535");

    RankTable table;
    table.seg_ = seg;
    table.n_ = n;
    table.ranks_.resize(n * n);
    table.order_.resize(n * n);

    std::vector<std::uint32_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = d.row(seg.start + i);
        std::iota(idx.begin(), idx.end(), 0u);
        std::sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
            const double da = row[seg.start + a];
            const double db = row[seg.start + b];
            return da < db || (da == db && a < b);
        });
        std::uint32_t *order = table.order_.data() + i * n;
        std::uint16_t *ranks = table.ranks_.data() + i * n;
        std::copy(idx.begin(), idx.end(), order);
        // Tied distances share the rank of the last member of the run.
        std::size_t pos = 0;
        while (pos < n) {
            std::size_t run_end = pos + 1;
            const double dist = row[seg.start + idx[pos]];
            while (run_end < n && row[seg.start + idx[run_end]] == dist) ++run_end;
            for (std::size_t k = pos; k < run_end; ++k)
                ranks[idx[k]] = static_cast<std::uint16_t>(run_end);
            pos = run_end;
        }
    }
    return table;
}

double detection_stat(const RankTable &table, std::size_t split,
                      std::size_t window_end) {
    const Segment seg = table.segment();
    if (window_end <= seg.start || window_end > seg.end)
        throw InvalidInput("detection_stat: window end outside the segment");
    if (split <= seg.start || split >= window_end)
        throw InvalidInput("detection_stat: both sides of the split must be nonempty");

    const std::size_t mp = split - seg.start;
    const std::size_t lp = window_end - seg.start;
    const std::size_t n = table.size();

    // Bucketed prefix counts by rank give the left / window ball counts of
    // every pair in O(n) per center.
    std::vector<std::uint32_t> left_by_rank(n + 1);
    std::vector<std::uint32_t> win_by_rank(n + 1);
    double acc = 0.0;
    for (std::size_t i = 0; i < lp; ++i) {
        const auto rank = table.ranks(i);
        std::fill(left_by_rank.begin(), left_by_rank.end(), 0u);
        std::fill(win_by_rank.begin(), win_by_rank.end(), 0u);
        for (std::size_t u = 0; u < mp; ++u) ++left_by_rank[rank[u]];
        for (std::size_t u = 0; u < lp; ++u) ++win_by_rank[rank[u]];
        for (std::size_t r = 1; r <= n; ++r) {
            left_by_rank[r] += left_by_rank[r - 1];
            win_by_rank[r] += win_by_rank[r - 1];
        }
        for (std::size_t j = 0; j < lp; ++j) {
            const std::int64_t cur = left_by_rank[rank[j]];
            const std::int64_t tot = win_by_rank[rank[j]];
            const std::int64_t a = cur * static_cast<std::int64_t>(lp) -
                                   tot * static_cast<std::int64_t>(mp);
            acc += static_cast<double>(a) * static_cast<double>(a);
        }
    }
    return cell_value(acc, mp, lp - mp);
}

double detection_stat(const DistanceMatrix &d, Segment segment, std::size_t split) {
    return detection_stat(build_rank_table(d, segment), split, segment.end);
}

std::optional<SegmentBest> segment_scan(const DistanceMatrix &d, Segment seg,
                                        std::size_t min_seg, std::size_t stride) {
    check_segment(d, seg);
    if (min_seg == 0) throw InvalidInput("segment_scan: min_seg must be >= 1");
    if (stride == 0) throw InvalidInput("segment_scan: stride must be >= 1");

    const std::size_t n = seg.length();
    if (n < 2 * min_seg) return std::nullopt;

    const RankTable table = build_rank_table(d, seg);
    ScanEngine engine(table, min_seg);
    BestCell best;

    engine.run(
        n, [&](std::size_t lp) { return (lp - 2 * min_seg) % stride == 0; },
        [&](std::size_t mp, std::size_t) { return (mp - min_seg) % stride == 0; },
        [&](std::size_t mp, std::size_t lp, double v) { best.offer(mp, lp, v); });

    if (stride > 1 && best.found) {
        // Exhaustive pass over the +-stride neighborhood of the coarse cell.
        const std::size_t mc = best.mp, lc = best.lp;
        const std::size_t l_hi = std::min(n, lc + stride);
        engine.run(
            l_hi, [&](std::size_t lp) { return lp + stride >= lc; },
            [&](std::size_t mp, std::size_t) {
                return mp + stride >= mc && mp <= mc + stride;
            },
            [&](std::size_t mp, std::size_t lp, double v) { best.offer(mp, lp, v); });
    }

    return SegmentBest{seg.start + best.mp, seg.start + best.lp, best.value};
}

std::vector<ProfileRow> scan_profile(const DistanceMatrix &d, Segment seg,
                                     std::size_t min_seg, std::size_t stride) {
    check_segment(d, seg);
    if (min_seg == 0) throw InvalidInput("scan_profile: min_seg must be >= 1");
    if (stride == 0) throw InvalidInput("scan_profile: stride must be >= 1");

    const std::size_t n = seg.length();
    if (n < 2 * min_seg) throw InvalidInput("scan_profile: segment shorter than 2 * min_seg");

    const RankTable table = build_rank_table(d, seg);
    ScanEngine engine(table, min_seg);
    std::vector<ProfileRow> rows;
    engine.run(
        n, [&](std::size_t lp) { return (lp - 2 * min_seg) % stride == 0; },
        [&](std::size_t mp, std::size_t) { return (mp - min_seg) % stride == 0; },
        [&](std::size_t mp, std::size_t lp, double v) {
            rows.push_back({seg.start + mp, seg.start + lp, v});
        });
    return rows;
}

}  // namespace bdcp
