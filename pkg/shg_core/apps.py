from django.apps import AppConfig


class ShgCoreConfig(AppConfig):
    name = 'shg_core'
    verbose_name = 'Finite Semihypergroups'
