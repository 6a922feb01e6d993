#include "hitlsim/Events.h"

#include <string>

#include "hitlsim/Errors.h"

namespace hitlsim {

void validate(const FrameSeries& series) {
    for (std::size_t i = 0; i < series.values.size(); ++i) {
        if (series.values[i] > 1) {
            throw ValidationError("frame " + std::to_string(i) + ": flag must be 0 or 1, got " +
                                  std::to_string(static_cast<int>(series.values[i])));
        }
    }
    if (series.frame_rate && *series.frame_rate <= 0.0) {
        throw ValidationError("frame_rate must be positive");
    }
}

void validate(const EventInterval& interval) {
    if (interval.start_frame < 0 || interval.end_frame < 0) {
        throw ValidationError("interval frames must be non-negative");
    }
    if (interval.start_frame > interval.end_frame) {
        throw ValidationError("interval start " + std::to_string(interval.start_frame) +
                              " exceeds end " + std::to_string(interval.end_frame));
    }
}

FrameSeries smooth(const FrameSeries& series, SmoothingMode mode) {
    validate(series);
    const std::size_t len = series.values.size();
    FrameSeries out;
    out.frame_rate = series.frame_rate;
    if (len == 0) return out;

    const std::size_t rows = (len + 2) / 3;
    // Anomalous count per grid row, tail row zero-completed.
    std::vector<int> row_sum(rows, 0);
    for (std::size_t i = 0; i < len; ++i) row_sum[i / 3] += series.values[i];

    out.values.assign(len, 0);
    for (std::size_t r = 0; r < rows; ++r) {
        int count = row_sum[r];
        if (r > 0) count += row_sum[r - 1];
        if (r + 1 < rows) count += row_sum[r + 1];

        const std::size_t begin = r * 3;
        const std::size_t end = std::min(begin + 3, len);
        if (count >= 5) {
            for (std::size_t i = begin; i < end; ++i) out.values[i] = 1;
        } else if (mode == SmoothingMode::set_only) {
            for (std::size_t i = begin; i < end; ++i) out.values[i] = series.values[i];
        }
    }
    return out;
}

std::vector<EventInterval> extract_events(const FrameSeries& series) {
    validate(series);
    std::vector<EventInterval> events;
    std::int64_t run_start = -1;
    for (std::size_t i = 0; i < series.values.size(); ++i) {
        if (series.values[i] == 1) {
            if (run_start < 0) run_start = static_cast<std::int64_t>(i);
        } else if (run_start >= 0) {
            events.push_back({run_start, static_cast<std::int64_t>(i) - 1});
            run_start = -1;
        }
    }
    if (run_start >= 0) {
        events.push_back({run_start, static_cast<std::int64_t>(series.values.size()) - 1});
    }
    return events;
}

std::vector<EventInterval> postprocess(const FrameSeries& series, SmoothingMode mode) {
    return extract_events(smooth(series, mode));
}

}  // namespace hitlsim
