#ifndef HITLSIM_H
#define HITLSIM_H

/*
 * C API for the hitlsim library: event-level anomaly post-processing,
 * IoU-based detection evaluation, a deterministic human-in-the-loop alert
 * pipeline simulator, and post-AI UX metrics over its logs.
 *
 * All objects are opaque handles created and destroyed by the library.
 * Functions return hitl_status; on failure the handle out-parameter is
 * left untouched and hitl_last_error() describes the problem for the
 * calling thread. Strings returned through char** out-parameters are
 * owned by the caller and released with hitl_string_free().
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hitl_status {
    HITL_OK = 0,
    HITL_ERROR_INTERNAL = 1,     /* unexpected failure inside the library */
    HITL_ERROR_INVALID_INPUT = 2 /* bad arguments, files, or configuration */
} hitl_status;

typedef struct hitl_frames hitl_frames;       /* binary per-frame anomaly flags */
typedef struct hitl_intervals hitl_intervals; /* list of [start,end] frame intervals */
typedef struct hitl_match hitl_match;         /* detection match report */
typedef struct hitl_config hitl_config;       /* simulation configuration */
typedef struct hitl_log hitl_log;             /* timestamped pipeline event log */
typedef struct hitl_survey hitl_survey;       /* Likert survey response set */

const char* hitl_version(void);
const char* hitl_last_error(void);
void hitl_string_free(char* text);

/* ---- frame series and event post-processing ---- */

hitl_status hitl_frames_read(const char* path, hitl_frames** out);
hitl_status hitl_frames_from_flags(const uint8_t* flags, size_t count, hitl_frames** out);
hitl_status hitl_frames_write(const hitl_frames* frames, const char* path);
size_t hitl_frames_length(const hitl_frames* frames);
hitl_status hitl_frames_get(const hitl_frames* frames, size_t index, uint8_t* out_flag);
void hitl_frames_free(hitl_frames* frames);

/* mode: "replace" (default when NULL) or "set_only" */
hitl_status hitl_smooth(const hitl_frames* frames, const char* mode, hitl_frames** out);
hitl_status hitl_postprocess(const hitl_frames* frames, const char* mode, hitl_intervals** out);

/* ---- event intervals ---- */

hitl_status hitl_intervals_read(const char* path, hitl_intervals** out);
hitl_status hitl_intervals_write(const hitl_intervals* intervals, const char* path);
hitl_status hitl_intervals_from_pairs(const int64_t* starts, const int64_t* ends, size_t count,
                                      hitl_intervals** out);
size_t hitl_intervals_count(const hitl_intervals* intervals);
hitl_status hitl_intervals_get(const hitl_intervals* intervals, size_t index, int64_t* out_start,
                               int64_t* out_end);
void hitl_intervals_free(hitl_intervals* intervals);

/* ---- IoU evaluation ---- */

hitl_status hitl_iou(int64_t a_start, int64_t a_end, int64_t b_start, int64_t b_end, double* out);
hitl_status hitl_match_events(const hitl_intervals* gt, const hitl_intervals* pred,
                              double iou_threshold, hitl_match** out);
hitl_status hitl_match_counts(const hitl_match* match, uint64_t* out_gt, uint64_t* out_pred,
                              uint64_t* out_tp, uint64_t* out_fp, uint64_t* out_fn);
/* precision/recall: returns 1 through out_present when defined, else 0 */
hitl_status hitl_match_precision(const hitl_match* match, double* out, int* out_present);
hitl_status hitl_match_recall(const hitl_match* match, double* out, int* out_present);
/* format: "json" or "table" */
hitl_status hitl_match_render(const hitl_match* match, const char* format, char** out_text);
void hitl_match_free(hitl_match* match);

/* ---- simulation ---- */

hitl_status hitl_config_default(hitl_config** out);
hitl_status hitl_config_read(const char* path, hitl_config** out);
hitl_status hitl_config_set_seed(hitl_config* config, uint64_t seed);
hitl_status hitl_config_render(const hitl_config* config, char** out_text);
void hitl_config_free(hitl_config* config);

hitl_status hitl_simulate(const hitl_config* config, hitl_log** out);

/* ---- event logs ---- */

hitl_status hitl_log_read(const char* path, hitl_log** out);
hitl_status hitl_log_write(const hitl_log* log, const char* path);
size_t hitl_log_size(const hitl_log* log);
hitl_status hitl_log_summary_render(const hitl_log* log, const char* format, char** out_text);
void hitl_log_free(hitl_log* log);

/* ---- UX metrics ---- */

hitl_status hitl_feedback_fpr(const hitl_log* log, double* out, int* out_present);
hitl_status hitl_oracle_fpr(const hitl_log* log, double* out, int* out_present);
hitl_status hitl_adaptation_time(const hitl_log* log, double window_s, double cv_threshold,
                                 int stable_windows, double* out, int* out_present);
hitl_status hitl_metrics_render(const hitl_log* log, double window_s, double cv_threshold,
                                int stable_windows, const char* format, char** out_text);

/* ---- trust surveys ---- */

hitl_status hitl_survey_read(const char* path, hitl_survey** out);
hitl_status hitl_survey_cronbach_alpha(const hitl_survey* survey, double* out);
hitl_status hitl_trust_render(const hitl_survey* survey, const char* format, char** out_text);
void hitl_survey_free(hitl_survey* survey);

#ifdef __cplusplus
}
#endif

#endif /* HITLSIM_H */
