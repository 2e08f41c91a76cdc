from django.apps import AppConfig


class MultiplicityConfig(AppConfig):
    name = 'multiplicity'
