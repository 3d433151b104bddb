#ifndef AUTHORID_MODEL_IO_HPP_
#define AUTHORID_MODEL_IO_HPP_

#include <filesystem>
#include <string>

#include "authorid/svm.hpp"

namespace authorid {

// Versioned JSON model file carrying the weights, the feature space, the
// optional selection, the training parameters and the tagger reference.
// write -> read -> write is byte-identical.
std::string model_to_json(const LinearModel& model);
LinearModel model_from_json(const std::string& text);

void save_model(const LinearModel& model, const std::filesystem::path& path);
LinearModel load_model(const std::filesystem::path& path);

}  // namespace authorid

#endif  // AUTHORID_MODEL_IO_HPP_
