from django.apps import AppConfig


class RatmeasureConfig(AppConfig):
    name = 'ratmeasure'
    verbose_name = 'Exact Rational Measures'
