#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "aimforge/error.hpp"
#include "aimforge/prompts.hpp"

namespace aimforge {
namespace {

TEST(RenderTemplate, Substitutes) {
  EXPECT_EQ(render_template("a {{x}} b {{y}}{{x}}", {{"x", "1"}, {"y", "2"}}), "a 1 b 21");
  EXPECT_EQ(render_template("no placeholders", {}), "no placeholders");
  EXPECT_EQ(render_template("", {}), "");
}

TEST(RenderTemplate, ValuesAreNotReExpanded) {
  EXPECT_EQ(render_template("{{x}}", {{"x", "{{y}}"}}), "{{y}}");
}

TEST(RenderTemplate, Errors) {
  EXPECT_THROW((void)render_template("{{missing}}", {}), Error);
  EXPECT_THROW((void)render_template("open {{x", {{"x", "1"}}), Error);
}

TEST(PromptTemplates, DefaultsCoverEveryRole) {
  const PromptTemplates& t = PromptTemplates::defaults();
  for (const char* name : {"system", "explorer", "verifier", "verifier_reask", "refiner", "transcriber"}) {
    EXPECT_FALSE(t.get(name).empty()) << name;
  }
  EXPECT_THROW((void)t.get("critic"), Error);
}

TEST(PromptTemplates, DirectoryOverridesSingleFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "aimforge_prompts_test";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "transcriber.txt") << "custom {{text}}";
  const PromptTemplates t = PromptTemplates::load(dir);
  EXPECT_EQ(t.get("transcriber"), "custom {{text}}");
  EXPECT_EQ(t.get("verifier"), PromptTemplates::defaults().get("verifier"));
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace aimforge
