// hitlsim command-line tool. Links only the public C API.

#include <cstdint>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "hitlsim/hitlsim.h"

namespace {

// Exit contract: 0 success, 2 input/validation error, 1 internal error.
// hitl_status values are chosen to match.
int fail(hitl_status status) {
    std::fprintf(stderr, "error: %s\n", hitl_last_error());
    return static_cast<int>(status);
}

void print_owned(char* text) {
    std::fputs(text, stdout);
    hitl_string_free(text);
}

struct PostprocessArgs {
    std::string frames;
    std::string out;
    std::string mode = "replace";
};

int run_postprocess(const PostprocessArgs& args) {
    std::fprintf(stderr, "effective: postprocess frames=%s out=%s mode=%s\n", args.frames.c_str(),
                 args.out.c_str(), args.mode.c_str());
    hitl_frames* frames = nullptr;
    if (auto s = hitl_frames_read(args.frames.c_str(), &frames)) return fail(s);
    hitl_intervals* intervals = nullptr;
    if (auto s = hitl_postprocess(frames, args.mode.c_str(), &intervals)) {
        hitl_frames_free(frames);
        return fail(s);
    }
    hitl_frames_free(frames);
    if (auto s = hitl_intervals_write(intervals, args.out.c_str())) {
        hitl_intervals_free(intervals);
        return fail(s);
    }
    std::printf("events: %zu\n", hitl_intervals_count(intervals));
    hitl_intervals_free(intervals);
    return 0;
}

struct EvalArgs {
    std::string gt;
    std::string pred;
    double iou = 0.5;
    std::string format = "table";
};

int run_eval(const EvalArgs& args) {
    std::fprintf(stderr, "effective: eval gt=%s pred=%s iou=%g format=%s\n", args.gt.c_str(),
                 args.pred.c_str(), args.iou, args.format.c_str());
    hitl_intervals* gt = nullptr;
    if (auto s = hitl_intervals_read(args.gt.c_str(), &gt)) return fail(s);
    hitl_intervals* pred = nullptr;
    if (auto s = hitl_intervals_read(args.pred.c_str(), &pred)) {
        hitl_intervals_free(gt);
        return fail(s);
    }
    hitl_match* match = nullptr;
    hitl_status status = hitl_match_events(gt, pred, args.iou, &match);
    hitl_intervals_free(gt);
    hitl_intervals_free(pred);
    if (status) return fail(status);
    char* text = nullptr;
    if (auto s = hitl_match_render(match, args.format.c_str(), &text)) {
        hitl_match_free(match);
        return fail(s);
    }
    hitl_match_free(match);
    print_owned(text);
    return 0;
}

struct SimulateArgs {
    std::string config;
    std::string out;
    std::uint64_t seed = 0;
    bool seed_set = false;
};

int run_simulate(const SimulateArgs& args) {
    hitl_config* config = nullptr;
    if (auto s = hitl_config_read(args.config.c_str(), &config)) return fail(s);
    if (args.seed_set) hitl_config_set_seed(config, args.seed);

    char* effective = nullptr;
    if (auto s = hitl_config_render(config, &effective)) {
        hitl_config_free(config);
        return fail(s);
    }
    std::fprintf(stderr, "effective: simulate out=%s\n%s", args.out.c_str(), effective);
    hitl_string_free(effective);

    hitl_log* log = nullptr;
    hitl_status status = hitl_simulate(config, &log);
    hitl_config_free(config);
    if (status) return fail(status);
    if (auto s = hitl_log_write(log, args.out.c_str())) {
        hitl_log_free(log);
        return fail(s);
    }
    char* summary = nullptr;
    if (auto s = hitl_log_summary_render(log, "table", &summary)) {
        hitl_log_free(log);
        return fail(s);
    }
    hitl_log_free(log);
    print_owned(summary);
    return 0;
}

struct MetricsArgs {
    std::string log;
    double window = 3600.0;
    double cv = 0.1;
    int stable = 3;
    std::string format = "table";
};

int run_metrics(const MetricsArgs& args) {
    std::fprintf(stderr, "effective: metrics log=%s window=%g cv=%g stable=%d format=%s\n",
                 args.log.c_str(), args.window, args.cv, args.stable, args.format.c_str());
    hitl_log* log = nullptr;
    if (auto s = hitl_log_read(args.log.c_str(), &log)) return fail(s);
    char* text = nullptr;
    if (auto s = hitl_metrics_render(log, args.window, args.cv, args.stable, args.format.c_str(),
                                     &text)) {
        hitl_log_free(log);
        return fail(s);
    }
    hitl_log_free(log);
    print_owned(text);
    return 0;
}

struct SurveyArgs {
    std::string responses;
    std::string format = "table";
};

int run_survey(const SurveyArgs& args) {
    std::fprintf(stderr, "effective: survey responses=%s format=%s\n", args.responses.c_str(),
                 args.format.c_str());
    hitl_survey* survey = nullptr;
    if (auto s = hitl_survey_read(args.responses.c_str(), &survey)) return fail(s);
    char* text = nullptr;
    if (auto s = hitl_trust_render(survey, args.format.c_str(), &text)) {
        hitl_survey_free(survey);
        return fail(s);
    }
    hitl_survey_free(survey);
    print_owned(text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"HITL alert pipeline simulator and event-level detection evaluation"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(hitl_version()));

    PostprocessArgs post;
    auto* post_cmd = app.add_subcommand("postprocess", "Smooth frame flags and extract event intervals");
    post_cmd->add_option("--frames", post.frames, "frame flag file")->required();
    post_cmd->add_option("--out", post.out, "output interval file")->required();
    post_cmd->add_option("--mode", post.mode, "smoothing mode")
        ->check(CLI::IsMember({"replace", "set_only"}));

    EvalArgs eval;
    auto* eval_cmd = app.add_subcommand("eval", "Match predicted events against ground truth by IoU");
    eval_cmd->add_option("--gt", eval.gt, "ground-truth interval file")->required();
    eval_cmd->add_option("--pred", eval.pred, "predicted interval file")->required();
    eval_cmd->add_option("--iou", eval.iou, "IoU threshold (match requires iou > threshold)");
    eval_cmd->add_option("--format", eval.format, "output format")
        ->check(CLI::IsMember({"json", "table"}));

    SimulateArgs sim;
    auto* sim_cmd = app.add_subcommand("simulate", "Run the deterministic alert/feedback simulation");
    sim_cmd->add_option("--config", sim.config, "simulation config file")->required();
    sim_cmd->add_option("--out", sim.out, "output log file")->required();
    auto* seed_opt = sim_cmd->add_option("--seed", sim.seed, "override the config seed");

    MetricsArgs metrics;
    auto* metrics_cmd = app.add_subcommand("metrics", "Compute UX metrics from an event log");
    metrics_cmd->add_option("--log", metrics.log, "event log file")->required();
    metrics_cmd->add_option("--window", metrics.window, "adaptation window seconds");
    metrics_cmd->add_option("--cv", metrics.cv, "adaptation CV threshold");
    metrics_cmd->add_option("--stable", metrics.stable, "consecutive stable windows required");
    metrics_cmd->add_option("--format", metrics.format, "output format")
        ->check(CLI::IsMember({"json", "table"}));

    SurveyArgs survey;
    auto* survey_cmd = app.add_subcommand("survey", "Score a trust survey response file");
    survey_cmd->add_option("--responses", survey.responses, "survey response file")->required();
    survey_cmd->add_option("--format", survey.format, "output format")
        ->check(CLI::IsMember({"json", "table"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (post_cmd->parsed()) return run_postprocess(post);
    if (eval_cmd->parsed()) return run_eval(eval);
    if (sim_cmd->parsed()) {
        sim.seed_set = seed_opt->count() > 0;
        return run_simulate(sim);
    }
    if (metrics_cmd->parsed()) return run_metrics(metrics);
    if (survey_cmd->parsed()) return run_survey(survey);
    return 2;
}
