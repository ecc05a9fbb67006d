// SPDX-FileCopyrightText: (c) 2026 The atomnlu Authors
//
// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>

#include <cstdio>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "atomnlu/atomnlu.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitBackend = 2;

struct Flags {
  std::string config;
  std::optional<std::string> seed, parallelism, sample_size, backend, endpoint, template_mode, out;
  std::optional<std::string> datasets, input, stage, split, roles, scramble_fraction, command, timeout_ms;
  std::vector<std::string> settings;
  bool verbose = false;
  bool quiet = false;
};

int exit_code(atomnlu_status s) {
  if (s == ATOMNLU_OK) return kExitOk;
  if (s == ATOMNLU_ERR_BACKEND) return kExitBackend;
  return kExitValidation;
}

void add_common(CLI::App& app, Flags& f) {
  app.add_option("--config", f.config, "INI run configuration");
  app.add_option("--seed", f.seed, "root seed");
  app.add_option("--parallelism", f.parallelism, "concurrent backend requests");
  app.add_option("--sample-size", f.sample_size, "eval records per dataset and atomic kind");
  app.add_option("--backend", f.backend, "http | subprocess | oracle | scramble");
  app.add_option("--endpoint", f.endpoint, "HTTP backend base URL");
  app.add_option("--template", f.template_mode, "agnostic | language-specific");
  app.add_option("--out", f.out, "output directory");
  app.add_option("--datasets", f.datasets, "dataset registry (file or directory)");
  app.add_option("--input", f.input, "command input file");
  app.add_option("--stage", f.stage, "pretrain | finetune (emit-train)");
  app.add_option("--split", f.split, "split evaluated");
  app.add_option("--roles", f.roles, "comma-separated roles evaluated (held_in, held_out, pretrain)");
  app.add_option("--scramble-fraction", f.scramble_fraction, "damage rate of the scramble backend");
  app.add_option("--command", f.command, "subprocess backend command line");
  app.add_option("--timeout-ms", f.timeout_ms, "backend request timeout");
  app.add_option("--set", f.settings, "section.key=value override (repeatable)");
  app.add_flag("-v,--verbose", f.verbose, "log progress");
  app.add_flag("-q,--quiet", f.quiet, "log errors only");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"atomnlu: instruction data and evaluation toolkit for unified NLU"};
  app.set_version_flag("--version", std::string(atomnlu_version()));
  app.require_subcommand(1);
  Flags flags;
  add_common(app, flags);

  const std::map<std::string, std::string> commands{
      {"ingest", "validate and normalize datasets listed in the registry"},
      {"translate", "turn samples into atomic classification / extraction instances"},
      {"augment", "expand training instances with sampled positives and negatives"},
      {"balance", "cap instructions per (dataset, positive label)"},
      {"emit-train", "write prompt / completion training records"},
      {"gen-pt-prompts", "build pre-training generation prompts for passages"},
      {"parse-pt-responses", "parse generator responses into the pre-training corpus"},
      {"eval", "query a backend on sampled evaluation instances"},
      {"score", "score eval results per dataset and atomic kind"},
      {"report", "aggregate scores into the task table"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  atomnlu_set_log_level(flags.verbose ? ATOMNLU_LOG_INFO : flags.quiet ? ATOMNLU_LOG_ERROR : ATOMNLU_LOG_WARN);

  std::unique_ptr<atomnlu_context, decltype(&atomnlu_context_destroy)> ctx(atomnlu_context_create(),
                                                                          atomnlu_context_destroy);
  if (!ctx) return kExitValidation;
  atomnlu_config* raw_cfg = nullptr;
  if (atomnlu_config_create(ctx.get(), &raw_cfg) != ATOMNLU_OK) return kExitValidation;
  std::unique_ptr<atomnlu_config, decltype(&atomnlu_config_destroy)> cfg(raw_cfg, atomnlu_config_destroy);

  auto fail = [&](atomnlu_status s) {
    std::fprintf(stderr, "atomnlu: %s\n", atomnlu_last_error(ctx.get()));
    return exit_code(s);
  };

  if (!flags.config.empty()) {
    if (auto s = atomnlu_config_load(ctx.get(), cfg.get(), flags.config.c_str()); s != ATOMNLU_OK) return fail(s);
  }

  const std::vector<std::pair<const char*, const std::optional<std::string>*>> overrides{
      {"run.seed", &flags.seed},
      {"run.parallelism", &flags.parallelism},
      {"run.sample_size", &flags.sample_size},
      {"backend.kind", &flags.backend},
      {"backend.endpoint", &flags.endpoint},
      {"run.template", &flags.template_mode},
      {"run.out", &flags.out},
      {"run.registry", &flags.datasets},
      {"run.input", &flags.input},
      {"run.stage", &flags.stage},
      {"run.eval_split", &flags.split},
      {"run.eval_roles", &flags.roles},
      {"backend.scramble_fraction", &flags.scramble_fraction},
      {"backend.command", &flags.command},
      {"backend.timeout_ms", &flags.timeout_ms},
  };
  for (const auto& [key, value] : overrides) {
    if (!*value) continue;
    if (auto s = atomnlu_config_set(ctx.get(), cfg.get(), key, (*value)->c_str()); s != ATOMNLU_OK) return fail(s);
  }
  for (const auto& setting : flags.settings) {
    const auto eq = setting.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "atomnlu: --set expects section.key=value, got '%s'\n", setting.c_str());
      return kExitValidation;
    }
    const auto key = setting.substr(0, eq);
    const auto value = setting.substr(eq + 1);
    if (auto s = atomnlu_config_set(ctx.get(), cfg.get(), key.c_str(), value.c_str()); s != ATOMNLU_OK) return fail(s);
  }

  const std::string command = app.get_subcommands().front()->get_name();
  atomnlu_buffer* summary = nullptr;
  const auto status = atomnlu_run(ctx.get(), command.c_str(), cfg.get(), &summary);
  if (status != ATOMNLU_OK) return fail(status);
  std::fwrite(atomnlu_buffer_data(summary), 1, atomnlu_buffer_size(summary), stdout);
  if (atomnlu_buffer_size(summary) && atomnlu_buffer_data(summary)[atomnlu_buffer_size(summary) - 1] != '\n')
    std::fputc('\n', stdout);
  atomnlu_buffer_free(summary);
  return kExitOk;
}
