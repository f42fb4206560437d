from django.apps import AppConfig


class DegreeConfig(AppConfig):
    name = 'degree'
    verbose_name = 'Topological degree'
