from django.apps import AppConfig


class NormsConfig(AppConfig):
    name = 'norms'
    verbose_name = 'Sobolev, BMO and weighted norms'
