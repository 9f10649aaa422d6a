/* Compiles sarve.h as C and makes a few calls through it. */
#include <stdio.h>
#include <string.h>

#include "sarve/sarve.h"

int main(void) {
  sarve_generator_config cfg;
  sarve_conference* conf = NULL;
  double tie = 0.0;
  char* text = NULL;

  if (sarve_abi_version() != SARVE_ABI_VERSION) return 1;
  if (sarve_tie_strength(6, 70, 720, &tie) != SARVE_OK || tie < 0.5833 || tie > 0.5834) return 2;

  sarve_generator_config_default(&cfg);
  cfg.n_participants = 10;
  cfg.n_presenters = 3;
  cfg.n_sessions = 4;
  if (sarve_conference_generate(&cfg, &conf) != SARVE_OK) return 3;
  if (sarve_conference_to_text(conf, &text) != SARVE_OK) return 4;
  if (strncmp(text, "sarve-dataset v1\n", 17) != 0) return 5;
  sarve_string_free(text);

  if (sarve_recommend(conf, "nobody", NULL, &text) != SARVE_E_NOT_FOUND) return 6;
  if (strlen(sarve_last_error()) == 0) return 7;

  sarve_conference_free(conf);
  puts("ok");
  return 0;
}
