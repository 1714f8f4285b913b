#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "smt/audio.hpp"
#include "smt/config.hpp"
#include "smt/emit.hpp"
#include "smt/error.hpp"
#include "smt/normalize.hpp"
#include "smt/pipeline.hpp"
#include "smt/prosody.hpp"
#include "smt/transcript.hpp"
#include "smt/typo_map.hpp"

namespace py = pybind11;

namespace {

smt::AudioBuffer decode_bytes(const py::bytes& data) {
  std::string_view view = data;
  return smt::decode_wav(
      std::span(reinterpret_cast<const std::uint8_t*>(view.data()), view.size()));
}

smt::PipelineConfig resolve(const std::optional<smt::PipelineConfig>& cfg) {
  return cfg.value_or(smt::PipelineConfig{});
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Speech-modulated typography: prosody extraction and caption styling";

  // SmtError(ValueError) carrying `kind` and `path` attributes.
  static py::handle error_type =
      py::exception<smt::Error>(m, "SmtError", PyExc_ValueError).release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const smt::Error& e) {
      py::object instance = error_type(e.what());
      py::setattr(instance, "kind", py::str(std::string(smt::to_string(e.kind()))));
      py::setattr(instance, "path", py::str(e.path()));
      PyErr_SetObject(error_type.ptr(), instance.ptr());
    }
  });

  // ---- configuration ----
  py::class_<smt::PitchConfig>(m, "PitchConfig")
      .def(py::init<>())
      .def_readwrite("min_hz", &smt::PitchConfig::min_hz)
      .def_readwrite("max_hz", &smt::PitchConfig::max_hz)
      .def_readwrite("frame_sec", &smt::PitchConfig::frame_sec)
      .def_readwrite("hop_sec", &smt::PitchConfig::hop_sec)
      .def_readwrite("voicing_threshold", &smt::PitchConfig::voicing_threshold)
      .def_readwrite("octave_cost", &smt::PitchConfig::octave_cost)
      .def("effective_frame_sec", &smt::PitchConfig::effective_frame_sec);

  py::class_<smt::WindowSpec>(m, "WindowSpec")
      .def(py::init<>())
      .def(py::init([](std::size_t back, std::size_t ahead) {
             return smt::WindowSpec{back, ahead};
           }),
           py::arg("look_back"), py::arg("look_ahead"))
      .def_readwrite("look_back", &smt::WindowSpec::look_back)
      .def_readwrite("look_ahead", &smt::WindowSpec::look_ahead);

  py::class_<smt::MapConfig>(m, "MapConfig")
      .def(py::init<>())
      .def_readwrite("weight_min", &smt::MapConfig::weight_min)
      .def_readwrite("weight_max", &smt::MapConfig::weight_max)
      .def_readwrite("baseline_max_em", &smt::MapConfig::baseline_max_em)
      .def_readwrite("spacing_max_em", &smt::MapConfig::spacing_max_em)
      .def_readwrite("spacing_pivot", &smt::MapConfig::spacing_pivot);

  py::class_<smt::PipelineConfig>(m, "PipelineConfig")
      .def(py::init<>())
      .def_readwrite("pitch", &smt::PipelineConfig::pitch)
      .def_readwrite("window", &smt::PipelineConfig::window)
      .def_readwrite("map", &smt::PipelineConfig::map)
      .def_readwrite("font_family", &smt::PipelineConfig::font_family);

  m.def("parse_config", [](std::string_view text) { return smt::parse_config(text); },
        py::arg("text"));

  // ---- audio ----
  py::class_<smt::AudioBuffer>(m, "AudioBuffer")
      .def(py::init<std::vector<double>, std::uint32_t>(), py::arg("samples"),
           py::arg("sample_rate"))
      .def_property_readonly("samples", [](const smt::AudioBuffer& b) {
        return std::vector<double>(b.samples().begin(), b.samples().end());
      })
      .def_property_readonly("sample_rate", &smt::AudioBuffer::sample_rate)
      .def_property_readonly("duration_sec", &smt::AudioBuffer::duration_sec)
      .def("__len__", &smt::AudioBuffer::size);

  m.def("decode_wav", &decode_bytes, py::arg("data"));
  m.def("read_wav", &smt::read_wav_file, py::arg("path"));
  m.def("encode_wav", [](const smt::AudioBuffer& b) {
    auto bytes = smt::encode_wav(b);
    return py::bytes(reinterpret_cast<const char*>(bytes.data()), bytes.size());
  });
  m.def("slice", [](const smt::AudioBuffer& b, double start, double end) {
    return smt::slice(b, {start, end});
  }, py::arg("buffer"), py::arg("start"), py::arg("end"));

  // ---- prosody ----
  m.def("rms", [](const std::vector<double>& samples) { return smt::rms(samples); },
        py::arg("samples"));
  m.def("estimate_pitch",
        [](const smt::AudioBuffer& segment, const std::optional<smt::PitchConfig>& cfg) {
          return smt::estimate_pitch(segment, cfg.value_or(smt::PitchConfig{}));
        },
        py::arg("segment"), py::arg("config") = py::none(),
        "Median f0 in Hz over voiced frames, or None when unvoiced.");

  // ---- normalization ----
  m.def("global_normalize", [](const std::vector<double>& v) { return smt::global_normalize(v); });
  m.def("local_normalize",
        [](const std::vector<double>& v, const std::optional<smt::WindowSpec>& w) {
          return smt::local_normalize(v, w.value_or(smt::WindowSpec{}));
        },
        py::arg("values"), py::arg("window") = py::none());
  m.def("combine", [](const std::vector<double>& g, const std::vector<double>& l) {
    return smt::combine(g, l);
  });

  // ---- typography ----
  m.def("map_loudness_to_weight",
        [](double v, const std::optional<smt::MapConfig>& c) {
          return smt::map_loudness_to_weight(v, c.value_or(smt::MapConfig{}));
        },
        py::arg("v"), py::arg("config") = py::none());
  m.def("map_pitch_to_baseline",
        [](double v, const std::optional<smt::MapConfig>& c) {
          return smt::map_pitch_to_baseline(v, c.value_or(smt::MapConfig{}));
        },
        py::arg("v"), py::arg("config") = py::none());
  m.def("map_tempo_to_spacing",
        [](double v, const std::optional<smt::MapConfig>& c) {
          return smt::map_tempo_to_spacing(v, c.value_or(smt::MapConfig{}));
        },
        py::arg("v"), py::arg("config") = py::none());

  // ---- transcript and documents ----
  py::class_<smt::TimedTranscript>(m, "TimedTranscript")
      .def_property_readonly("syllable_counts",
                             [](const smt::TimedTranscript& t) { return smt::syllable_count(t); })
      .def("plain_text", [](const smt::TimedTranscript& t) { return smt::plain_text(t); })
      .def("to_json", [](const smt::TimedTranscript& t) { return smt::serialize_transcript(t); });
  m.def("parse_transcript", &smt::parse_transcript, py::arg("text"));

  m.def("extract",
        [](const std::filesystem::path& audio, const std::filesystem::path& align,
           const std::optional<smt::PipelineConfig>& cfg) {
          const auto pc = resolve(cfg);
          const auto buffer = smt::read_wav_file(audio);
          const auto transcript = smt::load_transcript(align);
          return smt::features_report(transcript,
                                      smt::extract_features(buffer, transcript, pc.pitch), pc.pitch,
                                      buffer.sample_rate());
        },
        py::arg("audio_path"), py::arg("align_path"), py::arg("config") = py::none(),
        "Raw feature table as JSON text.");
  m.def("modulate",
        [](const std::filesystem::path& audio, const std::filesystem::path& align,
           const std::optional<smt::PipelineConfig>& cfg) {
          return smt::serialize_doc(
              smt::modulate(smt::read_wav_file(audio), smt::load_transcript(align), resolve(cfg)));
        },
        py::arg("audio_path"), py::arg("align_path"), py::arg("config") = py::none(),
        "Canonical .smt.json text.");
  m.def("render_static",
        [](std::string_view doc_json) { return smt::emit_static_markup(smt::parse_doc(doc_json)); },
        py::arg("doc_json"), "Static HTML for a .smt.json document.");
  m.def("canonicalize_doc",
        [](std::string_view doc_json) { return smt::serialize_doc(smt::parse_doc(doc_json)); },
        py::arg("doc_json"));
}
