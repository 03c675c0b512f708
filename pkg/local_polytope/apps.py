from django.apps import AppConfig


class LocalPolytopeConfig(AppConfig):
    name = 'local_polytope'
    verbose_name = 'Local polytope'
