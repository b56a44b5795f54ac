#pragma once

#include <stdexcept>
#include <string>

namespace palimpsest {

/// Base of every error raised by the library. `code()` is a stable
/// machine-readable name, used by the CLI to pick an exit status.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

  /// True for failures caused by the environment (files, disk) rather than
  /// by bad parameters or inputs.
  virtual bool is_io() const noexcept { return false; }

 private:
  std::string code_;
};

class IoFailure : public Error {
 public:
  using Error::Error;
  bool is_io() const noexcept override { return true; }
};

struct FileNotFound : IoFailure {
  explicit FileNotFound(const std::string& path)
      : IoFailure("FileNotFound", "file not found: " + path) {}
};

struct IoError : IoFailure {
  explicit IoError(const std::string& what) : IoFailure("IoError", what) {}
};

struct MalformedImage : IoFailure {
  explicit MalformedImage(const std::string& what)
      : IoFailure("MalformedImage", what) {}
};

struct UnsupportedDepth : IoFailure {
  explicit UnsupportedDepth(const std::string& what)
      : IoFailure("UnsupportedDepth", what) {}
};

struct InvalidArgument : Error {
  explicit InvalidArgument(const std::string& what)
      : Error("InvalidArgument", what) {}
};

struct InvalidWindow : Error {
  explicit InvalidWindow(int window)
      : Error("InvalidWindow", "smoothing window must be odd and in [1, 31], got " +
                                   std::to_string(window)) {}
};

struct NotBimodal : Error {
  explicit NotBimodal(const std::string& what) : Error("NotBimodal", what) {}
};

struct DimensionMismatch : Error {
  explicit DimensionMismatch(const std::string& what)
      : Error("DimensionMismatch", what) {}
};

struct AllPixelsMasked : Error {
  AllPixelsMasked()
      : Error("AllPixelsMasked", "every pixel is masked; no background to sample") {}
};

struct InvalidSpec : Error {
  explicit InvalidSpec(const std::string& what) : Error("InvalidSpec", what) {}
};

}  // namespace palimpsest
