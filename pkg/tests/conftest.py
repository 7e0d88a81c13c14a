from hypothesis import HealthCheck, settings

# sympy oracles make per-example timings noisy; determinism matters more than speed here
settings.register_profile("repo", deadline=None, derandomize=True,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")
