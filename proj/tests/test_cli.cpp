// Copyright 2026 The lir Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>

#include "support.hpp"

namespace {

int lir_cli(const std::string& args, const lir::test::TempDir& dir) {
  const std::string cmd = std::string("\"") + LIR_CLI_PATH + "\" " + args + " >\"" + (dir / "stdout").string() +
                          "\" 2>\"" + (dir / "stderr").string() + "\"";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const std::string kCorpus = std::string("\"") + LIR_SAMPLE_CORPUS + "\"";

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("oracle pipeline") {
    lir::test::TempDir dir;
    const auto out = (dir / "out.jsonl").string();
    const auto trace = (dir / "trace.jsonl").string();
    REQUIRE(lir_cli("--backend oracle --seed 1 correct --input " + kCorpus + " --output " + out + " --trace " + trace,
                    dir) == 0);
    REQUIRE(lir_cli("evaluate --input " + kCorpus + " --outputs " + out + " --report " + (dir / "r.json").string(),
                    dir) == 0);
    CHECK(lir::test::slurp(dir / "r.json").find("\"groups\"") != std::string::npos);
    REQUIRE(lir_cli("export-trace --trace " + trace + " --corpus " + kCorpus + " --output " + (dir / "c.csv").string(),
                    dir) == 0);
    CHECK(lir::test::slurp(dir / "c.csv").rfind("record_id,iteration,cer,wer,score,fsm_state", 0) == 0);
    REQUIRE(lir_cli("inject --input " + kCorpus + " --output " + (dir / "noisy.jsonl").string() + " --rate 0.2", dir) ==
            0);
    CHECK(lir_cli("--backend heuristic baseline --mode nbest --n 3 --input " + kCorpus + " --output " + out, dir) == 0);
  }

  TEST_CASE("usage errors exit 1") {
    lir::test::TempDir dir;
    CHECK(lir_cli("", dir) == 1);
    CHECK(lir_cli("frobnicate", dir) == 1);
    CHECK(lir_cli("correct --input " + kCorpus, dir) == 1);
    CHECK(lir_cli("--backend gpt correct --input " + kCorpus + " --output x", dir) == 1);
    lir::test::spit(dir / "bad.json", "{\"fsm\": {\"max_iterations\": 0}}");
    CHECK(lir_cli("--config " + (dir / "bad.json").string() + " correct --input " + kCorpus + " --output " +
                      (dir / "o").string(),
                  dir) == 1);
  }

  TEST_CASE("data errors exit 2") {
    lir::test::TempDir dir;
    const auto out = (dir / "out.jsonl").string();
    CHECK(lir_cli("correct --input " + (dir / "absent.jsonl").string() + " --output " + out, dir) == 2);
    lir::test::spit(dir / "broken.jsonl", "{\"id\": \"a\"}\n");
    CHECK(lir_cli("correct --input " + (dir / "broken.jsonl").string() + " --output " + out, dir) == 2);
    CHECK(lir::test::slurp(dir / "stderr").find("line 1") != std::string::npos);
    lir::test::spit(dir / "plain.jsonl", "{\"id\": \"a\", \"language\": \"en\", \"hypothesis\": \"hi\"}\n");
    CHECK(lir_cli("--backend oracle correct --input " + (dir / "plain.jsonl").string() + " --output " + out, dir) == 2);
    CHECK(lir_cli("baseline --mode nbest --n 2 --input " + (dir / "plain.jsonl").string() + " --output " + out, dir) ==
          2);
  }

  TEST_CASE("backend errors exit 3") {
    lir::test::TempDir dir;
    const auto out = (dir / "out.jsonl").string();
    lir::test::spit(dir / "one.jsonl", "{\"id\": \"a\", \"language\": \"en\", \"hypothesis\": \"hi there\"}\n");
    const std::string one = (dir / "one.jsonl").string();
    CHECK(lir_cli("--backend live correct --input " + one + " --output " + out, dir) == 3);
    lir::test::spit(dir / "live.json", R"({"backend": {"kind": "live", "endpoint_url": "http://127.0.0.1:9/v1/chat",
      "model_name": "m", "backoff_base_ms": 1, "retry_budget": 1, "request_timeout_ms": 500}})");
    CHECK(lir_cli("--config " + (dir / "live.json").string() + " correct --input " + one + " --output " + out, dir) ==
          3);
  }
}
