from hypothesis import HealthCheck, settings

# Numeric property tests mix scipy special-function calls of very different
# cost; wall-clock deadlines only add flakiness here.
settings.register_profile(
    "contagion",
    deadline=None,
    suppress_health_check=(HealthCheck.too_slow,),
)
settings.load_profile("contagion")
