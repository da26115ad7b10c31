from django.apps import AppConfig


class FreeprodConfig(AppConfig):
    name = 'freeprod'
    verbose_name = 'Free Products'
