# Pipeline Module - Sweeps, Fitting Runs and Acceptance Checks
