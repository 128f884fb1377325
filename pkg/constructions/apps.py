from django.apps import AppConfig


class ConstructionsConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "constructions"
    verbose_name = "Graph families and constructive CDCs"
