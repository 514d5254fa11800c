#include "pddlkit_cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <future>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <thread>

#include "pddlkit/construct_io.hpp"
#include "pddlkit/distance.hpp"
#include "pddlkit/file_io.hpp"
#include "pddlkit/highlight.hpp"
#include "pddlkit/pddl_model.hpp"
#include "pddlkit/planner.hpp"
#include "pddlkit/process.hpp"
#include "pddlkit/scaffold.hpp"
#include "pddlkit/snippets.hpp"
#include "pddlkit/typegraph.hpp"

namespace pddlkit::cli {

namespace fs = std::filesystem;

namespace {

struct Globals {
  bool quiet = false;
  bool json = false;
};

struct Located {
  std::string file;
  std::size_t line = 1;
  std::size_t column = 1;
  ParseDiagnostic diagnostic;
};

std::vector<Located> locate(const std::string& file, std::string_view text,
                            Diagnostics diags) {
  std::stable_sort(diags.begin(), diags.end(),
                   [](const ParseDiagnostic& a, const ParseDiagnostic& b) {
                     return a.span.start < b.span.start;
                   });
  const LineIndex index(text);
  std::vector<Located> out;
  out.reserve(diags.size());
  for (auto& d : diags) {
    const auto pos = index.position(std::min(d.span.start, text.size()));
    out.push_back({file, pos.line, pos.column, std::move(d)});
  }
  return out;
}

nlohmann::ordered_json to_json(const Located& l) {
  nlohmann::ordered_json j;
  j["file"] = l.file;
  j["line"] = l.line;
  j["column"] = l.column;
  j["severity"] = std::string(to_string(l.diagnostic.severity));
  j["message"] = l.diagnostic.message;
  j["code"] = l.diagnostic.code;
  return j;
}

/// Prints diagnostics as "file:line:col: severity: message [code]" or as a
/// JSON array. Warnings are dropped under --quiet.
void report(const Globals& g, const std::vector<Located>& items,
            std::ostream& err) {
  if (g.json) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& l : items) {
      if (g.quiet && l.diagnostic.severity == Severity::Warning) continue;
      arr.push_back(to_json(l));
    }
    if (!arr.empty()) {
      err << arr.dump(2, ' ', false, nlohmann::json::error_handler_t::replace)
          << '\n';
    }
    return;
  }
  for (const auto& l : items) {
    if (g.quiet && l.diagnostic.severity == Severity::Warning) continue;
    err << l.file << ':' << l.line << ':' << l.column << ": "
        << to_string(l.diagnostic.severity) << ": " << l.diagnostic.message;
    if (!l.diagnostic.code.empty()) err << " [" << l.diagnostic.code << ']';
    err << '\n';
  }
}

void report(const Globals& g, const std::string& file, std::string_view text,
            Diagnostics diags, std::ostream& err) {
  report(g, locate(file, text, std::move(diags)), err);
}

std::string excerpt(std::string_view text, Span span) {
  std::string s(text.substr(span.start, span.size()));
  std::replace(s.begin(), s.end(), '\n', ' ');
  std::replace(s.begin(), s.end(), '\t', ' ');
  if (s.size() > 40) s = s.substr(0, 37) + "...";
  return s;
}

struct CheckOutcome {
  std::vector<Located> items;
  std::size_t errors = 0;
  bool unreadable = false;
  std::string read_error;
};

CheckOutcome check_file(const std::string& file) {
  CheckOutcome outcome;
  std::string text;
  try {
    text = read_file(file);
  } catch (const std::exception& e) {
    outcome.unreadable = true;
    outcome.read_error = e.what();
    outcome.errors = 1;
    return outcome;
  }

  Diagnostics diags;
  switch (detect_file_kind(text)) {
    case FileKind::Domain: {
      auto parsed = parse_domain(text);
      diags = std::move(parsed.diagnostics);
      auto graph = build_type_graph(parsed.domain);
      diags.insert(diags.end(), graph.diagnostics.begin(),
                   graph.diagnostics.end());
      break;
    }
    case FileKind::Problem:
      diags = parse_problem(text).diagnostics;
      break;
    case FileKind::Unknown:
      diags = parse_sexpr(text).diagnostics;
      diags.push_back({{0, 0}, Severity::Warning,
                       "neither a domain nor a problem definition",
                       "unknown-file-kind"});
      break;
  }
  const auto tokens = tokenize(text);
  for (const Span& region : invalid_regions(tokens, text)) {
    diags.push_back({region, Severity::Error,
                     "no valid scope for '" + excerpt(text, region) + "'",
                     "invalid-syntax"});
  }
  outcome.errors = static_cast<std::size_t>(
      std::count_if(diags.begin(), diags.end(), [](const ParseDiagnostic& d) {
        return d.severity == Severity::Error;
      }));
  outcome.items = locate(file, text, std::move(diags));
  return outcome;
}

int run_check(const Globals& g, const std::vector<std::string>& files,
              unsigned jobs, std::ostream& out) {
  std::vector<CheckOutcome> outcomes(files.size());
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  for (std::size_t begin = 0; begin < files.size(); begin += jobs) {
    const std::size_t end = std::min(files.size(), begin + jobs);
    std::vector<std::future<CheckOutcome>> pending;
    for (std::size_t i = begin; i < end; ++i) {
      pending.push_back(std::async(std::launch::async, check_file, files[i]));
    }
    for (std::size_t i = begin; i < end; ++i) {
      outcomes[i] = pending[i - begin].get();
    }
  }

  std::size_t errors = 0;
  std::vector<Located> all;
  for (std::size_t i = 0; i < files.size(); ++i) {
    auto& o = outcomes[i];
    errors += o.errors;
    if (o.unreadable) {
      all.push_back({files[i], 1, 1,
                     {{}, Severity::Error, "cannot read file: " + o.read_error,
                      "io-error"}});
    }
    all.insert(all.end(), o.items.begin(), o.items.end());
  }
  report(g, all, out);
  if (!g.quiet && !g.json) {
    out << errors << (errors == 1 ? " error" : " errors") << '\n';
  }
  return errors == 0 ? kExitOk : kExitDomainError;
}

std::vector<std::string> reversed(std::vector<std::string> args) {
  std::reverse(args.begin(), args.end());
  return args;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Knowledge-engineering tools for PDDL domains and problems",
               "pddlkit"};
  app.require_subcommand(1);
  Globals g;
  app.add_flag("-q,--quiet", g.quiet, "Only print errors and results")
      ->configurable(false);
  app.add_flag("--json", g.json, "Print diagnostics as JSON");
  app.fallthrough();

  // new
  std::string new_name;
  std::string new_dir = ".";
  std::string new_templates;
  auto* cmd_new = app.add_subcommand("new", "Create a PDDL project skeleton");
  cmd_new->add_option("name", new_name, "Project and domain name")->required();
  cmd_new->add_option("--dir", new_dir, "Parent directory");
  cmd_new->add_option("--templates", new_templates,
                      "Directory whose files override the built-in templates");

  // snippet
  std::string snip_trigger;
  bool snip_list = false;
  bool snip_raw = false;
  std::string snip_dir;
  std::string snip_export;
  auto* cmd_snippet = app.add_subcommand("snippet", "Expand a snippet trigger");
  cmd_snippet->add_option("trigger", snip_trigger, "Trigger such as p2 or action");
  cmd_snippet->add_flag("--list", snip_list, "List available triggers");
  cmd_snippet->add_flag("--raw", snip_raw, "Keep ${k:default} tab stops");
  cmd_snippet->add_option("--snippets-dir", snip_dir,
                          "Directory of user .snippet files");
  cmd_snippet->add_option("--export", snip_export,
                          "Write all snippets as .snippet files into DIR");

  // tokens
  std::string tok_file;
  std::string tok_format = "json";
  bool tok_fail = false;
  auto* cmd_tokens = app.add_subcommand("tokens", "Print scoped tokens");
  cmd_tokens->add_option("file", tok_file)->required();
  cmd_tokens->add_option("--format", tok_format)
      ->check(CLI::IsMember({"json", "html"}));
  cmd_tokens->add_flag("--fail-on-invalid", tok_fail,
                       "Exit 1 when an invalid region is present");

  // diagram
  std::string dia_file;
  std::string dia_out;
  bool dia_no_render = false;
  std::string dia_renderer;
  auto* cmd_diagram =
      app.add_subcommand("diagram", "Generate a type hierarchy diagram");
  cmd_diagram->add_option("domain", dia_file)->required();
  cmd_diagram->add_option("--out", dia_out,
                          "Output root (default: the domain's directory)");
  cmd_diagram->add_flag("--no-render", dia_no_render, "Only write DOT");
  cmd_diagram->add_option("--renderer", dia_renderer,
                          "Renderer command (default: dot, if installed)");

  // extract
  std::string ext_file;
  std::string ext_keyword;
  auto* cmd_extract = app.add_subcommand("extract", "Print blocks by keyword");
  cmd_extract->add_option("file", ext_file)->required();
  cmd_extract->add_option("keyword", ext_keyword, "e.g. :goal")->required();

  // insert
  std::string ins_file;
  std::string ins_keyword;
  std::string ins_text;
  bool ins_stdout = false;
  auto* cmd_insert =
      app.add_subcommand("insert", "Append constructs to a block");
  cmd_insert->add_option("file", ins_file)->required();
  cmd_insert->add_option("keyword", ins_keyword, "e.g. :init")->required();
  cmd_insert->add_option("construct", ins_text, "e.g. \"(hungry gisela)\"")
      ->required();
  cmd_insert->add_flag("--stdout", ins_stdout,
                       "Print the result instead of editing the file");

  // distance
  std::string dist_file;
  std::string dist_predicate(kDefaultLocationPredicate);
  bool dist_in_place = false;
  bool dist_stdout = false;
  std::string dist_out;
  auto* cmd_distance = app.add_subcommand(
      "distance", "Add pairwise Euclidean distance facts to a problem");
  cmd_distance->add_option("problem", dist_file)->required();
  cmd_distance->add_option("--predicate", dist_predicate,
                           "Location predicate name");
  auto* dist_in_place_opt =
      cmd_distance->add_flag("--in-place", dist_in_place, "Edit the problem");
  cmd_distance->add_option("--out", dist_out, "Output file")
      ->excludes(dist_in_place_opt);
  cmd_distance->add_flag("--stdout", dist_stdout, "Print the result");

  // plan
  std::string plan_domain = "domain.pddl";
  std::string plan_problem = "problems/p01.pddl";
  std::string plan_config;
  std::string plan_command;
  std::optional<int> plan_timeout;
  auto* cmd_plan = app.add_subcommand("plan", "Run a planner");
  cmd_plan->add_option("--domain", plan_domain);
  cmd_plan->add_option("--problem", plan_problem);
  cmd_plan->add_option("--config", plan_config,
                       "Config file (default: pddlkit.toml if present)");
  cmd_plan
      ->add_option("--command", plan_command,
                   "Command template with {domain} and {problem}")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  cmd_plan->add_option("--timeout", plan_timeout, "Seconds")
      ->check(CLI::PositiveNumber);

  // check
  std::vector<std::string> check_files;
  unsigned check_jobs = 0;
  auto* cmd_check = app.add_subcommand("check", "Report diagnostics");
  cmd_check->add_option("files", check_files)->required();
  cmd_check->add_option("-j,--jobs", check_jobs, "Parallel workers");

  for (const auto& a : args) {
    if (a.empty() || a.front() == '-') continue;
    if (app.get_subcommand_no_throw(a) == nullptr) {
      err << "unknown subcommand '" << a << "'\n" << app.help();
      return kExitUsage;
    }
    break;
  }

  try {
    auto argv = reversed(args);
    app.parse(argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    if (e.get_name() == "RequiredError" && args.empty()) {
      err << app.help();
    }
    return kExitUsage;
  }

  try {
    if (*cmd_new) {
      auto templates = default_templates();
      if (!new_templates.empty()) {
        const auto overrides = load_template_dir(new_templates);
        templates = merge_templates(templates, overrides);
      }
      const auto created = create_project(new_name, new_dir, templates);
      if (!g.quiet) {
        for (const auto& p : created) out << p.string() << '\n';
      }
      return kExitOk;
    }

    if (*cmd_snippet) {
      SnippetSet set = SnippetSet::builtin();
      if (!snip_dir.empty()) set.load_directory(snip_dir);
      report(g, snip_dir, "", set.warnings(), err);
      if (!snip_export.empty()) {
        export_snippets(set, snip_export);
        if (!g.quiet) out << "exported " << set.snippets().size()
                          << " snippets to " << snip_export << '\n';
        return kExitOk;
      }
      if (snip_list) {
        for (const auto& l : list_snippets(set)) {
          out << l.trigger << '\t' << l.description << '\n';
        }
        return kExitOk;
      }
      if (snip_trigger.empty()) {
        err << "snippet: a trigger is required (or --list)\n";
        return kExitUsage;
      }
      const auto expansion = expand(snip_trigger, set);
      out << (snip_raw ? expansion.template_text : expansion.text) << '\n';
      return kExitOk;
    }

    if (*cmd_tokens) {
      const std::string text = read_file(tok_file);
      const auto tokens = tokenize(text);
      if (tok_format == "html") {
        out << render_html(tokens, text, fs::path(tok_file).filename().string());
      } else {
        out << emit_tokens_json(tokens, text) << '\n';
      }
      if (tok_fail && !invalid_regions(tokens, text).empty()) {
        return kExitDomainError;
      }
      return kExitOk;
    }

    if (*cmd_diagram) {
      DiagramOptions options;
      if (!dia_no_render) {
        if (!dia_renderer.empty()) {
          options.renderer = dia_renderer;
        } else if (find_executable("dot")) {
          options.renderer = "dot";
        }
      }
      const fs::path root =
          dia_out.empty() ? fs::path(dia_file).parent_path() : fs::path(dia_out);
      const auto artifacts =
          render_diagram(dia_file, root.empty() ? fs::path(".") : root, options);
      auto diags = artifacts.diagnostics;
      if (dia_no_render) {
        diags.erase(std::remove_if(diags.begin(), diags.end(),
                                   [](const ParseDiagnostic& d) {
                                     return d.code == "no-renderer";
                                   }),
                    diags.end());
      }
      report(g, dia_file, read_file(artifacts.copied_domain_path), diags, err);
      if (!g.quiet) {
        out << "revision " << artifacts.revision << '\n'
            << artifacts.copied_domain_path.string() << '\n'
            << artifacts.dot_path.string() << '\n';
        if (artifacts.image_path) out << artifacts.image_path->string() << '\n';
      }
      return kExitOk;
    }

    if (*cmd_extract) {
      const auto set = read_construct(ext_keyword, ext_file);
      if (set.blocks.empty()) {
        err << ext_file << ": no block headed by '" << ext_keyword << "'\n";
        return kExitDomainError;
      }
      for (std::size_t i = 0; i < set.blocks.size(); ++i) {
        if (i > 0) out << '\n';
        out << set.text_of(i) << '\n';
      }
      return kExitOk;
    }

    if (*cmd_insert) {
      const auto constructs = parse_constructs(ins_text);
      const auto text = add_construct(
          ins_file, ins_keyword, constructs,
          ins_stdout ? WriteMode::DryRun : WriteMode::InPlace);
      if (ins_stdout) out << text;
      return kExitOk;
    }

    if (*cmd_distance) {
      const std::string text = read_file(dist_file);
      const auto result = augment_with_distances(text, dist_predicate);
      report(g, dist_file, text, result.diagnostics, err);
      if (dist_stdout) {
        out << result.text;
        return kExitOk;
      }
      const fs::path target = dist_in_place ? fs::path(dist_file)
                              : dist_out.empty()
                                  ? default_distance_output(dist_file)
                                  : fs::path(dist_out);
      write_file_atomic(target, result.text);
      if (!g.quiet) {
        out << result.appended << " distance facts for "
            << result.location_count << " locations written to "
            << target.string() << '\n';
      }
      return kExitOk;
    }

    if (*cmd_plan) {
      PlannerConfig config;
      fs::path config_file = plan_config;
      if (config_file.empty() && fs::exists(kPlannerConfigFile)) {
        config_file = kPlannerConfigFile;
      }
      if (!config_file.empty()) config = load_planner_config(config_file);
      if (!plan_command.empty()) config.command_template = plan_command;
      if (plan_timeout) config.timeout_seconds = plan_timeout;
      if (config.command_template.empty()) {
        err << "plan: no planner configured; pass --command or create "
            << kPlannerConfigFile << " with a command = \"...\" line\n";
        return kExitUsage;
      }
      fs::create_directories(config.solution_dir);
      const auto result = run_planner(config, plan_domain, plan_problem);
      out << result.stdout_text;
      err << result.stderr_text;
      if (result.timed_out) {
        err << "plan: planner timed out after " << *config.timeout_seconds
            << " s\n";
        return kExitDomainError;
      }
      if (!g.quiet) {
        err << "plan: exit " << result.exit_code << " in "
            << result.elapsed.count() << " s\n";
        if (result.solution_path) {
          err << "plan: solution " << result.solution_path->string() << '\n';
        }
      }
      return result.exit_code == 0 ? kExitOk : kExitDomainError;
    }

    if (*cmd_check) {
      return run_check(g, check_files, check_jobs, out);
    }
  } catch (const SpawnError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomainError;
  } catch (const RenderError& e) {
    err << "error: " << e.what() << '\n';
    if (!e.renderer_stderr().empty()) err << e.renderer_stderr();
    return kExitDomainError;
  } catch (const DistanceError& e) {
    report(g, dist_file, read_file(dist_file), e.diagnostics(), err);
    err << "error: " << e.what() << '\n';
    return kExitDomainError;
  } catch (const PlannerConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomainError;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace pddlkit::cli
