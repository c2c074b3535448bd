#include "adsp/cli.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "adsp/errors.hpp"
#include "adsp/serialize.hpp"

namespace adsp::cli {

namespace {

using io::json;

struct Options {
  std::optional<std::string> mode;
  std::size_t box_cap = kDefaultBoxCap;
  std::size_t genericity_cap = kDefaultGenericityCap;
  std::size_t jobs = 1;
  std::string out_path;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

io::InstanceFile load_instance(const std::string& path) { return io::instance_from_json(io::parse(read_file(path))); }

struct Prepared {
  io::InstanceFile file;
  std::vector<XiSequence> xs;
  Instance inst;
};

Prepared prepare(const std::string& path) {
  auto file = load_instance(path);
  auto xs = normalize(file.tuple);
  auto inst = build_instance(xs);
  return {std::move(file), std::move(xs), std::move(inst)};
}

json instance_summary(const Instance& inst) {
  return {{"alpha", io::vertex_json(inst.quiver, inst.alpha)},
          {"lambda", io::vertex_json(inst.quiver, inst.lambda)},
          {"p_alpha", defect_p(inst.quiver, inst.alpha)}};
}

json cmd_decide(const std::string& path, const Options& opt, std::ostream& err) {
  const auto p = prepare(path);
  io::Mode mode = p.file.mode.value_or(io::Mode::automatic);
  if (opt.mode) mode = io::parse_mode(*opt.mode);
  const DecideOptions dopts{opt.box_cap, kernels::Exec::parallel};

  io::Mode route = mode;
  if (mode == io::Mode::automatic) {
    route = io::Mode::general;
    if (p.file.tuple.all_nilpotent()) {
      route = io::Mode::nilpotent;
    } else if (trace_condition(p.file.tuple)) {
      try {
        if (is_generic(p.file.tuple, opt.genericity_cap)) route = io::Mode::generic;
      } catch (const ResourceError& e) {
        static std::mutex err_mutex;
        const std::lock_guard lock(err_mutex);
        err << "note: " << e.what() << "; using the general decider\n";
      }
    }
  }
  Decision d;
  switch (route) {
    case io::Mode::nilpotent: d = classify_nilpotent(p.inst); break;
    case io::Mode::generic: d = decide_generic(p.inst, p.file.tuple, opt.genericity_cap); break;
    default: d = decide(p.inst, dopts); break;
  }
  json j = io::to_json(p.inst.quiver, d);
  j.update(instance_summary(p.inst));
  j["route"] = io::to_string(route);
  return j;
}

json cmd_rigid(const std::string& path, const Options& opt) {
  const auto p = prepare(path);
  return {{"rigid", is_rigid(p.inst, {opt.box_cap, kernels::Exec::parallel})}};
}

json cmd_roots(const std::string& path, const Options& opt) {
  const auto p = prepare(path);
  json j = instance_summary(p.inst);
  j["root_class"] = to_string(classify_root(p.inst.quiver, p.inst.alpha));
  j["r_lambda_count"] = enumerate_Rlambda(p.inst.quiver, p.inst.alpha, p.inst.lambda, opt.box_cap).size();
  return j;
}

json cmd_construct(const std::string& path, const Options& opt) {
  const auto file = load_instance(path);
  const auto sol = construct_rigid(file.tuple, TieBreak::least_vertex, {opt.box_cap, kernels::Exec::parallel});
  json doc = io::to_json(sol);
  if (opt.out_path.empty()) return doc;
  std::ofstream out(opt.out_path, std::ios::binary);
  if (!out) throw InputError("cannot write " + opt.out_path);
  out << doc.dump(2) << '\n';
  if (!out) throw InputError("write to " + opt.out_path + " failed");
  return {{"written", opt.out_path}, {"verify", io::to_json(verify_solution(file.tuple, sol))}};
}

json cmd_verify(const std::string& path, const std::string& solution_path) {
  const auto file = load_instance(path);
  const auto sol = io::solution_from_json(io::parse(read_file(solution_path)));
  return io::to_json(verify_solution(file.tuple, sol));
}

struct Outcome {
  int code = kComputed;
  json doc;
  std::string message;
};

Outcome guarded(const std::function<json()>& body) {
  try {
    return {kComputed, body(), {}};
  } catch (const InputError& e) {
    return {kInvalidInput, {}, e.what()};
  } catch (const ResourceError& e) {
    return {kResourceCap, {}, e.what()};
  } catch (const InternalError& e) {
    return {kInternalFailure, {}, std::string("internal assertion failed: ") + e.what()};
  } catch (const json::exception& e) {
    return {kInvalidInput, {}, e.what()};
  } catch (const std::exception& e) {
    return {kInternalFailure, {}, e.what()};
  }
}

// One instance per worker; results are reported in input order.
int run_files(const std::vector<std::string>& files, std::size_t jobs,
              const std::function<json(const std::string&)>& body, std::ostream& out, std::ostream& err) {
  std::vector<Outcome> results(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) results[i] = guarded([&] { return body(files[i]); });
  };
  const std::size_t workers = std::clamp<std::size_t>(jobs, 1, files.size());
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (std::size_t i = 0; i < files.size(); ++i) {
    if (results[i].code != kComputed) {
      err << files[i] << ": " << results[i].message << '\n';
      return results[i].code;
    }
  }
  if (files.size() == 1) {
    out << results.front().doc.dump() << '\n';
  } else {
    json all = json::array();
    for (auto& r : results) all.push_back(std::move(r.doc));
    out << all.dump() << '\n';
  }
  return kComputed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Additive Deligne-Simpson problem: decide, construct and verify irreducible solutions"};
  app.require_subcommand(1);
  Options opt;
  std::vector<std::string> files;
  std::string instance_path;
  std::string solution_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--box-cap", opt.box_cap, "maximum lattice box size for root enumeration and the DP");
    sub->add_option("--genericity-cap", opt.genericity_cap, "maximum states for the genericity test");
  };
  auto* decide_cmd = app.add_subcommand("decide", "decide whether an irreducible solution exists");
  decide_cmd->add_option("files", files, "instance files")->required();
  decide_cmd->add_option("--mode", opt.mode, "auto|general|nilpotent|generic");
  decide_cmd->add_option("--jobs", opt.jobs, "worker threads across files");
  add_common(decide_cmd);

  auto* rigid_cmd = app.add_subcommand("rigid", "test for a rigid irreducible solution");
  rigid_cmd->add_option("files", files, "instance files")->required();
  rigid_cmd->add_option("--jobs", opt.jobs, "worker threads across files");
  add_common(rigid_cmd);

  auto* roots_cmd = app.add_subcommand("roots", "print alpha, lambda, root class, p(alpha) and |R+_lambda|");
  roots_cmd->add_option("files", files, "instance files")->required();
  roots_cmd->add_option("--jobs", opt.jobs, "worker threads across files");
  add_common(roots_cmd);

  auto* construct_cmd = app.add_subcommand("construct", "construct the solution in a rigid case");
  construct_cmd->add_option("file", instance_path, "instance file")->required();
  construct_cmd->add_option("--out", opt.out_path, "write the solution here instead of stdout");
  add_common(construct_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "check a candidate solution");
  verify_cmd->add_option("file", instance_path, "instance file")->required();
  verify_cmd->add_option("solution", solution_path, "solution file")->required();

  std::vector<const char*> argv{"adsp"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    err << app.help();
    return kInvalidInput;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kInvalidInput;
  }

  if (opt.mode) {
    const auto m = guarded([&] { return json(io::to_string(io::parse_mode(*opt.mode))); });
    if (m.code != kComputed) {
      err << m.message << '\n';
      return m.code;
    }
  }

  if (*decide_cmd) return run_files(files, opt.jobs, [&](const std::string& f) { return cmd_decide(f, opt, err); }, out, err);
  if (*rigid_cmd) return run_files(files, opt.jobs, [&](const std::string& f) { return cmd_rigid(f, opt); }, out, err);
  if (*roots_cmd) return run_files(files, opt.jobs, [&](const std::string& f) { return cmd_roots(f, opt); }, out, err);
  if (!instance_path.empty()) files = {instance_path};
  if (*construct_cmd) return run_files(files, 1, [&](const std::string& f) { return cmd_construct(f, opt); }, out, err);
  return run_files(files, 1, [&](const std::string& f) { return cmd_verify(f, solution_path); }, out, err);
}

}  // namespace adsp::cli
