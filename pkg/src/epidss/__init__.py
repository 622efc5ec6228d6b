"""Decision support for epidemic resource management.

Engines: case-series forecasting (discounted weighted least squares),
critical-item allocation (capped-proportional water-filling), and lockdown
recommendation (14-day demand-vs-availability breach check), exposed
through a CLI and an HTTP service.
"""

__version__ = "0.1.0"
