import { Component, OnDestroy, OnInit } from '@angular/core';
import { Observable } from 'rxjs';

@Component({ selector: 'app-widget', template: '' })
export class WidgetComponent implements OnInit, OnDestroy {
  value = 0;
  data$!: Observable<number>;

  ngOnInit() {
    this.data$.subscribe(v => (this.value = v));
    setTimeout(() => this.flash(), 100);
    window.addEventListener('resize', this.layout);
  }

  ngOnDestroy() {
    console.log('widget destroyed');
  }

  layout = () => console.log('layout');

  flash() {}
}
