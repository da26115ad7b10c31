from django.apps import AppConfig


class ConstructionsConfig(AppConfig):
    name = 'constructions'
    verbose_name = 'Semihypergroup Constructions'
