from django.apps import AppConfig


class DeterminizationConfig(AppConfig):
    name = 'determinization'
