// Copyright 2026 The bioann Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BIOANN_ERROR_H_
#define BIOANN_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bioann {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller handed us something that breaks a precondition.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

class InvalidUtf8 : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class InputTooLarge : public InvalidInput {
 public:
  InputTooLarge(std::size_t chars, std::size_t cap)
      : InvalidInput("input of " + std::to_string(chars) +
                     " characters exceeds cap of " + std::to_string(cap)) {}
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// PubTator parsing.
class MalformedLine : public Error {
 public:
  MalformedLine(std::size_t line_no, const std::string& reason)
      : Error("line " + std::to_string(line_no) + ": " + reason),
        line_no_(line_no) {}
  std::size_t line_no() const { return line_no_; }

 private:
  std::size_t line_no_;
};

class OffsetMismatch : public Error {
 public:
  OffsetMismatch(const std::string& doc_id, std::size_t line_no)
      : Error("line " + std::to_string(line_no) + ": surface does not match " +
              "text slice in document " + doc_id),
        doc_id_(doc_id),
        line_no_(line_no) {}
  const std::string& doc_id() const { return doc_id_; }
  std::size_t line_no() const { return line_no_; }

 private:
  std::string doc_id_;
  std::size_t line_no_;
};

// Tagging.
class LengthMismatch : public Error {
 public:
  using Error::Error;
};

class BackendUnavailable : public Error {
 public:
  using Error::Error;
};

class ProtocolViolation : public Error {
 public:
  using Error::Error;
};

// Normalization.
class EmptyLexicon : public Error {
 public:
  EmptyLexicon() : Error("lexicon is empty") {}
};

class EmptyIndex : public Error {
 public:
  EmptyIndex() : Error("embedding index is empty") {}
};

class LexiconFormatError : public Error {
 public:
  LexiconFormatError(const std::string& file, std::size_t line_no,
                     const std::string& reason)
      : Error(file + ":" + std::to_string(line_no) + ": " + reason),
        file_(file),
        line_no_(line_no) {}
  const std::string& file() const { return file_; }
  std::size_t line_no() const { return line_no_; }

 private:
  std::string file_;
  std::size_t line_no_;
};

// Ingest.
class PmidNotFound : public Error {
 public:
  explicit PmidNotFound(const std::string& pmid)
      : Error("PMID " + pmid + " not found"), pmid_(pmid) {}
  const std::string& pmid() const { return pmid_; }

 private:
  std::string pmid_;
};

class FetchFailed : public Error {
 public:
  using Error::Error;
};

class MalformedResponse : public Error {
 public:
  using Error::Error;
};

// Store.
class StoreCorrupt : public Error {
 public:
  using Error::Error;
};

class IoFailure : public Error {
 public:
  using Error::Error;
};

// Evaluation.
class EmptyEvaluation : public Error {
 public:
  EmptyEvaluation() : Error("evaluation set is empty") {}
};

}  // namespace bioann

#endif  // BIOANN_ERROR_H_
