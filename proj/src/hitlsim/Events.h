#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

namespace hitlsim {

// Per-frame binary anomaly flags (0 = normal, 1 = anomalous), optionally
// tagged with the capture frame rate. Empty series are valid.
struct FrameSeries {
    std::vector<std::uint8_t> values;
    std::optional<double> frame_rate;

    bool operator==(const FrameSeries&) const = default;
};

// Inclusive [start_frame, end_frame] anomalous segment, start <= end.
struct EventInterval {
    std::int64_t start_frame = 0;
    std::int64_t end_frame = 0;

    std::int64_t length() const { return end_frame - start_frame + 1; }
    auto operator<=>(const EventInterval&) const = default;
};

// What happens to a grid row whose 3x3 window fails the majority vote:
// replace forces it to all zeros, set_only leaves the original frames.
enum class SmoothingMode { replace, set_only };

void validate(const FrameSeries& series);
void validate(const EventInterval& interval);

// Majority-vote temporal smoothing. Frames are laid out row-major into an
// Nx3 grid (the last row zero-completed when the length is not a multiple
// of 3); each row is voted on by the 9 entries of rows i-1..i+1 with
// all-zero rows beyond either boundary. A count of 5 or more anomalous
// entries sets the row to all ones, otherwise the mode applies. All rows
// are decided against the original input; the result is truncated back to
// the input length and keeps the frame rate.
FrameSeries smooth(const FrameSeries& series, SmoothingMode mode = SmoothingMode::replace);

// Maximal runs of consecutive 1-frames as intervals, ascending by start,
// pairwise separated by at least one zero frame.
std::vector<EventInterval> extract_events(const FrameSeries& series);

// smooth followed by extract_events.
std::vector<EventInterval> postprocess(const FrameSeries& series, SmoothingMode mode = SmoothingMode::replace);

}  // namespace hitlsim
