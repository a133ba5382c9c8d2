#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace idk {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

// Malformed CoNLL-U text. Carries the 1-based line number of the offending line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }
  const char* kind() const noexcept override { return "parse_error"; }

 private:
  std::size_t line_;
};

// A sentence that violates the dependency-tree invariants.
class StructuralError : public Error {
 public:
  StructuralError(const std::string& sentence_id, const std::string& what)
      : Error("sentence '" + sentence_id + "': " + what), sentence_id_(sentence_id) {}
  const std::string& sentence_id() const noexcept { return sentence_id_; }
  const char* kind() const noexcept override { return "structural_error"; }

 private:
  std::string sentence_id_;
};

class LookupError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "lookup_error"; }
};

// Template file or template description rejected at load time.
class CompilationError : public Error {
 public:
  CompilationError(const std::string& template_id, const std::string& what)
      : Error("template '" + template_id + "': " + what), template_id_(template_id) {}
  const std::string& template_id() const noexcept { return template_id_; }
  const char* kind() const noexcept override { return "compilation_error"; }

 private:
  std::string template_id_;
};

// A realization plan could not be executed; always a template-file bug.
class RealizationError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "realization_error"; }
};

class ContractError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "contract_error"; }
};

class ConfigError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "config_error"; }
};

class IngestionError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "ingestion_error"; }
};

// A metric requested over an empty corpus.
class MetricError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "metric_error"; }
};

class ProvenanceError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "provenance_error"; }
};

class IoError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "io_error"; }
};

// The external dependency parser could not be reached or answered badly.
class ParserBackendError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "parser_backend_error"; }
};

}  // namespace idk
