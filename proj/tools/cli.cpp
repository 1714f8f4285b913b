#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "smt/config.hpp"
#include "smt/emit.hpp"
#include "smt/error.hpp"
#include "smt/pipeline.hpp"

namespace smt::cli {

namespace {

struct Overrides {
  std::optional<double> pitch_min, pitch_max;
  std::optional<double> weight_min, weight_max, baseline_max, spacing_max;
  std::optional<std::size_t> lookback, lookahead;
};

struct AnalysisArgs {
  std::string audio;
  std::string align;
  std::string config;
  std::string out;
  Overrides flags;
};

void add_analysis_options(CLI::App* cmd, AnalysisArgs& a) {
  cmd->add_option("audio", a.audio, "Input .wav file")->required();
  cmd->add_option("align", a.align, "Syllable-timed transcription (.align.json)")->required();
  cmd->add_option("--config", a.config, "Pipeline config file (TOML-style)");
  cmd->add_option("--out", a.out, "Output file (default: stdout)");
  cmd->add_option("--pitch-min", a.flags.pitch_min, "Lowest pitch searched, Hz");
  cmd->add_option("--pitch-max", a.flags.pitch_max, "Highest pitch searched, Hz");
  cmd->add_option("--weight-min", a.flags.weight_min, "Font weight for the quietest syllable");
  cmd->add_option("--weight-max", a.flags.weight_max, "Font weight for the loudest syllable");
  cmd->add_option("--baseline-max", a.flags.baseline_max, "Largest baseline shift, em");
  cmd->add_option("--spacing-max", a.flags.spacing_max, "Largest letter-spacing, em");
  cmd->add_option("--lookback", a.flags.lookback, "Local window: syllables before");
  cmd->add_option("--lookahead", a.flags.lookahead, "Local window: syllables after");
}

// Config file first, then flags on top.
PipelineConfig resolve_config(const AnalysisArgs& a) {
  PipelineConfig cfg;
  if (!a.config.empty()) cfg = load_config(a.config);
  const Overrides& f = a.flags;
  if (f.pitch_min) cfg.pitch.min_hz = *f.pitch_min;
  if (f.pitch_max) cfg.pitch.max_hz = *f.pitch_max;
  if (f.weight_min) cfg.map.weight_min = *f.weight_min;
  if (f.weight_max) cfg.map.weight_max = *f.weight_max;
  if (f.baseline_max) cfg.map.baseline_max_em = *f.baseline_max;
  if (f.spacing_max) cfg.map.spacing_max_em = *f.spacing_max;
  if (f.lookback) cfg.window.look_back = *f.lookback;
  if (f.lookahead) cfg.window.look_ahead = *f.lookahead;
  cfg.validate();
  return cfg;
}

void write_output(const std::string& path, const std::string& bytes, std::ostream& out) {
  if (path.empty()) {
    out << bytes;
    out.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorKind::IoError, "cannot open for writing", path);
  file.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!file) throw Error(ErrorKind::IoError, "write failed", path);
}

int run_extract(const AnalysisArgs& a, std::ostream& out) {
  const PipelineConfig cfg = resolve_config(a);
  const AudioBuffer audio = read_wav_file(a.audio);
  const TimedTranscript transcript = load_transcript(a.align);
  const auto features = extract_features(audio, transcript, cfg.pitch);
  write_output(a.out, features_report(transcript, features, cfg.pitch, audio.sample_rate()), out);
  return kExitOk;
}

int run_modulate(const AnalysisArgs& a, std::ostream& out) {
  const PipelineConfig cfg = resolve_config(a);
  const AudioBuffer audio = read_wav_file(a.audio);
  const TimedTranscript transcript = load_transcript(a.align);
  write_output(a.out, serialize_doc(modulate(audio, transcript, cfg)), out);
  return kExitOk;
}

int run_render_static(const std::string& doc_path, const std::string& out_path, std::ostream& out) {
  write_output(out_path, emit_static_markup(load_doc(doc_path)), out);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Speech-modulated typography: prosody-driven caption styling"};
  app.name("smt");
  app.require_subcommand(1);

  AnalysisArgs extract_args;
  auto* extract = app.add_subcommand("extract", "Report raw per-syllable prosodic features");
  add_analysis_options(extract, extract_args);

  AnalysisArgs modulate_args;
  auto* modulate_cmd = app.add_subcommand("modulate", "Write a .smt.json caption document");
  add_analysis_options(modulate_cmd, modulate_args);

  std::string doc_path, html_out;
  auto* render = app.add_subcommand("render-static", "Render a .smt.json document as HTML");
  render->add_option("doc", doc_path, "Input .smt.json document")->required();
  render->add_option("--out", html_out, "Output file (default: stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "smt: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (extract->parsed()) return run_extract(extract_args, out);
    if (modulate_cmd->parsed()) return run_modulate(modulate_args, out);
    return run_render_static(doc_path, html_out, out);
  } catch (const Error& e) {
    err << "smt: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "smt: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace smt::cli
